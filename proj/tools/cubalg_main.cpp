#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cubalg/cli/app.hpp"

namespace {

int config_error(const cubalg::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cubalg::cli;

    CLI::App app{"Cubic algebra toolkit: Casimir and structure-function derivation, spectra, representation checks"};
    app.require_subcommand(1, 1);

    std::string config_path, preset, format = "json", out_path;
    std::optional<int> p_max;
    std::optional<double> a, cutoff, tol;
    std::optional<int> grid;

    app.add_option("--config", config_path, "INI-style config with [algebra], [spectrum], [numeric]");
    app.add_option("--preset", preset, "Built-in algebra")->check(CLI::IsMember({"q5"}));
    app.add_option("--p-max", p_max, "Largest representation dimension minus one");
    app.add_option("--a", a, "Length scale for the numeric solver");
    app.add_option("--grid", grid, "Interior grid points of the coarse mesh");
    app.add_option("--cutoff", cutoff, "Energy cutoff for the numeric levels");
    app.add_option("--tol", tol, "Matching tolerance for compare");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write the report here instead of stdout");

    for (const auto& name : subcommands()) app.add_subcommand(name, "Run " + name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    RunConfig cfg;
    std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (!config_path.empty()) cfg = load_config(config_path, cfg);
        if (!preset.empty()) {
            if (cfg.spec) throw ConfigError(0, 0, "--preset conflicts with constants in the config");
            cfg.preset = preset;
        }
        if (p_max) cfg.p_max = *p_max;
        if (a) cfg.numeric.a = *a;
        if (grid) cfg.numeric.grid = *grid;
        if (cutoff) cfg.numeric.cutoff = *cutoff;
        if (tol) cfg.compare_tol = *tol;
        cfg.format = format == "csv" ? Format::Csv : Format::Json;
        cfg = parse_config("", cfg);  // range checks

        RunResult r = run(sub, cfg);
        if (out_path.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!(out << r.output)) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return 2;
            }
        }
        for (const auto& f : r.failures) std::cerr << "check failed: " << f << "\n";
        return r.exit_code;
    } catch (const ConfigError& e) {
        return config_error(e);
    } catch (const cubalg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
