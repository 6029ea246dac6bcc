#include <chrono>
#include <cmath>
#include <random>

#include "cubalg/error.hpp"
#include "cubalg/schrodinger/numeric.hpp"
#include "doctest.h"

using namespace cubalg;

TEST_CASE("box discretization") {
    TridiagMatrix t = discretize([](double) { return 0.0; }, {0, 1, 3});
    CHECK(t.diagonal == std::vector<double>{16, 16, 16});
    CHECK(t.offdiagonal == std::vector<double>{-8, -8});
}

TEST_CASE("box ground level") {
    auto e = lowest_eigenvalues(discretize([](double) { return 0.0; }, {0, 1, 2000}), 1, 1e-12);
    CHECK(std::fabs(e[0] - M_PI * M_PI / 2) < 1e-3);
}

TEST_CASE("harmonic ground level") {
    auto e = lowest_eigenvalues(discretize([](double y) { return y * y / 8; }, {-12, 12, 4000}), 2, 1e-12);
    CHECK(std::fabs(e[0] - 0.25) < 1e-4);
    CHECK(std::fabs(e[1] - 0.75) < 1e-4);
}

TEST_CASE("singular node") {
    Grid1D g{-2, 2, 3};  // nodes -1, 0, 1
    CHECK_THROWS_AS(discretize([](double x) { return 1 / ((x - 1) * (x - 1)); }, g), Error);
}

TEST_CASE("Sturm inertia on random tridiagonals") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        TridiagMatrix t;
        const int n = 12;
        for (int i = 0; i < n; ++i) t.diagonal.push_back(u(rng));
        for (int i = 0; i + 1 < n; ++i) t.offdiagonal.push_back(u(rng));
        auto all = lowest_eigenvalues_serial(t, n, 1e-13);
        CHECK(std::is_sorted(all.begin(), all.end()));
        for (int k = 0; k < n; ++k) {
            double gap_lo = k ? all[static_cast<std::size_t>(k)] - all[static_cast<std::size_t>(k - 1)] : 1.0;
            if (gap_lo < 1e-9) continue;
            CHECK(count_below(t, all[static_cast<std::size_t>(k)] - 1e-9) == k);
        }
        CHECK(lowest_eigenvalues(t, n, 1e-13) == all);
    }
}

TEST_CASE("q5 wells respect the variational bound") {
    NumericOptions opt;
    auto mid = q5_x_levels(opt, "middle", 2);
    auto out = q5_x_levels(opt, "outer", 2);
    // Vx >= 2 on (-1, 1) and Vx > 1.3 on (1, 8)
    CHECK(mid[0] > 2);
    CHECK(out[0] > 1.3);
    CHECK(std::fabs(mid[0] - 4.4701) < 2e-3);
    CHECK(std::fabs(out[0] - 1.9506) < 2e-3);
}

TEST_CASE("q5 combined levels") {
    NumericOptions opt;
    auto levels = q5_levels(opt);
    REQUIRE_FALSE(levels.empty());
    CHECK(std::fabs(levels[0].energy - (q5_x_levels(opt, "outer", 1)[0] + 0.25)) < 1e-12);
    CHECK(levels[0].origin == "outerL[0]+y[0]");
    CHECK(levels[1].energy == levels[0].energy);
    // refinement witness
    NumericOptions fine = opt;
    fine.grid = 2 * opt.grid;
    auto ref = q5_levels(fine);
    REQUIRE(ref.size() == levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) CHECK(std::fabs(ref[i].energy - levels[i].energy) < 2e-3);
    // confinement: a longer outer well does not move the levels
    NumericOptions wide = opt;
    wide.outer_factor = 16;
    wide.grid = 2 * opt.grid;
    auto w = q5_levels(wide);
    REQUIRE(w.size() == levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) CHECK(std::fabs(w[i].energy - levels[i].energy) < 2e-3);
}
