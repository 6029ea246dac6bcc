#include "cubalg/cli/app.hpp"

#include <algorithm>

#include "cubalg/exactnum/parse.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cubalg;
using namespace cubalg::cli;

TEST_CASE("config sections and overrides") {
    RunConfig c = parse_config(R"(
# comment
[algebra]
beta = 2       ; trailing comment
delta = -32*h^2 + E
k = E/a

[spectrum]
p_max = 7
seed = 11

[numeric]
grid = 400
cutoff = 3.5
)");
    REQUIRE(c.spec.has_value());
    CHECK_FALSE(c.is_q5());
    CHECK(c.spec->beta == parse_expr("2", algebra_table()));
    CHECK(c.spec->delta == parse_expr("E - 32*h^2", algebra_table()));
    CHECK(c.spec->alpha.is_zero());
    CHECK(c.p_max == 7);
    CHECK(c.seed == 11);
    CHECK(c.numeric.grid == 400);
    CHECK(c.numeric.cutoff == doctest::Approx(3.5));
    CHECK(c.numeric.a == doctest::Approx(1.0));
}

TEST_CASE("preset and an empty config both give q5") {
    CHECK(parse_config("").is_q5());
    RunConfig c = parse_config("[algebra]\npreset = q5\n");
    CHECK(c.is_q5());
    CHECK(c.algebra() == q5_spec());
}

TEST_CASE("config errors carry line and offset") {
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::make_pair(e.line(), e.offset());
        }
        return std::make_pair(-1, std::size_t{0});
    };
    CHECK(line_of("[algebra]\nbeta = 1\ndelta = h^\n") == std::make_pair(3, std::size_t{2}));
    CHECK(line_of("[algebra]\nbeta = (1\n").first == 2);
    CHECK(line_of("[algebra]\nbeta = 1/(h-a)\n").first == 2);
    CHECK(line_of("[algebra\n").first == 1);
    CHECK(line_of("[physics]\n").first == 1);
    CHECK(line_of("p_max = 3\n").first == 1);
    CHECK(line_of("[spectrum]\np_max = three\n").first == 2);
    CHECK(line_of("[spectrum]\nlevels = 3\n").first == 2);
    CHECK(line_of("[algebra]\nomega = 3\n").first == 2);
    CHECK(line_of("[algebra]\npreset = q6\n").first == 2);
    CHECK(line_of("[algebra]\npreset = q5\nbeta = 1\n").first == 0);
    CHECK(line_of("[numeric]\ngrid = 2\n").first == 0);
    CHECK(line_of("[numeric]\na = -1\n").first == 0);
}

TEST_CASE("run rejects unknown subcommands and q5-only work on custom algebras") {
    RunConfig custom = parse_config("[algebra]\nbeta = 1\n");
    CHECK_THROWS_AS(run("frobnicate", RunConfig{}), ConfigError);
    CHECK_THROWS_AS(run("numeric", custom), ConfigError);
    CHECK_THROWS_AS(run("verify-q5", custom), ConfigError);
}

TEST_CASE("pipeline errors become failures with the module name") {
    // beta = delta = 0 has no oscillator realization
    RunConfig c = parse_config("[algebra]\nalpha = 1\nmu = 1\n");
    RunResult r = run("derive", c);
    CHECK(r.exit_code == 1);
    REQUIRE_FALSE(r.failures.empty());
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["derive"]["error"]["kind"] == "unsupported case");
    CHECK(j["derive"]["error"]["module"] == "ladder");
    CHECK(j["status"] == "fail");
}

TEST_CASE("spectrum report lists the six q5 families") {
    RunConfig c;
    c.p_max = 4;
    RunResult r = run("spectrum", c);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    const auto& fams = j["spectrum"]["families"];
    REQUIRE(fams.size() == 6);
    int unitary = 0;
    for (const auto& f : fams) unitary += f["unitary_for_all_p"].get<bool>() ? 1 : 0;
    CHECK(unitary == 2);
    CHECK(r.output == run("spectrum", c).output);

    c.format = Format::Csv;
    std::string csv = run("spectrum", c).output;
    CHECK(csv.rfind("u_branch,energy,phi,unitary_for_all_p,passing_p\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
