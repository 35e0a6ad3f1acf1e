#pragma once

#include <optional>
#include <string>
#include <vector>

namespace specfrac {

// Exit codes: 0 success, 1 a verdict came back inconclusive, 2 usage error,
// 3 validation error.
enum ExitCode { exit_ok = 0, exit_inconclusive = 1, exit_usage = 2, exit_validation = 3 };

struct RunConfig {
    std::string command;
    std::string spec_path;
    std::string gaps_path;
    std::string mu_path;
    std::string kind = "full";
    int level = 20;
    double exponent = 0.0;
    bool exponent_set = false;
    double alpha = 1.0;
    double lo = 0.05, hi = 1.5;  // abscissa bracket
    double tolerance = 1e-3;
    std::vector<std::string> procedures;
    std::string function_spec = "const";
    std::vector<std::string> point_pairs;
    std::string gauge_spec;  // "power:d" or "powerlog:d,gamma"
    std::uint64_t seed = 0;
    std::string output;     // json file; empty = stdout
    std::string plot_path;  // optional two-column CSV
    std::string cache_dir;
    std::string format = "json";
};

// Parses argv (without the program name). Throws std::invalid_argument with
// a usage message on bad input.
RunConfig parse_config(const std::vector<std::string>& args);

// Executes the command; writes the report and returns the exit code.
int run(const RunConfig& config);

int cli_main(int argc, char** argv);

} // namespace specfrac
