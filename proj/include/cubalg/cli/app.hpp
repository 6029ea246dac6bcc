#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubalg/algebra/spec.hpp"
#include "cubalg/error.hpp"
#include "cubalg/schrodinger/numeric.hpp"

namespace cubalg::cli {

enum class Format { Json, Csv };

/// Everything a subcommand needs. Built from a preset, a config file, and flag overrides.
struct RunConfig {
    std::string preset;                     // "q5" or empty
    std::optional<CubicAlgebraSpec> spec;   // from [algebra]; empty means the preset
    int p_max = 50;
    int repcheck_p_max = 6;
    int repcheck_samples = 3;               // random (h, a) points besides h = a = 1
    std::uint64_t seed = 20240601;
    NumericOptions numeric{};
    double compare_tol = 2e-3;
    Format format = Format::Json;

    bool is_q5() const { return !spec.has_value(); }
    CubicAlgebraSpec algebra() const;
};

/// Raised for anything that should end with exit code 2.
class ConfigError : public Error {
public:
    ConfigError(int line, std::size_t offset, const std::string& msg);
    int line() const { return line_; }
    std::size_t offset() const { return offset_; }

private:
    int line_;
    std::size_t offset_;
};

/// Reads the INI-like config:
///   [algebra]  alpha = ..., ..., k = ...   (expressions in E, h, a) or preset = q5
///   [spectrum] p_max, repcheck_p_max, repcheck_samples, seed
///   [numeric]  a, grid, cutoff, outer_factor, tol, compare_tol
/// '#' and ';' start comments. Missing algebra constants default to 0.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 a check failed
    std::string output;
    std::vector<std::string> failures;
};

const std::vector<std::string>& subcommands();

/// Runs one of subcommands(). Pipeline errors are reported as failures (exit 1),
/// except ConfigError which propagates.
RunResult run(const std::string& subcommand, const RunConfig& cfg);

}  // namespace cubalg::cli
