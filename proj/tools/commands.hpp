#pragma once

#include <json.hpp>
#include <optional>
#include <string>

namespace prolate::cli {

enum class Format { Json, Csv };

struct RunConfig {
    std::string command;
    std::string places;          // "2,3"; empty for the real place only
    double lambda = 1.0;
    int size = 0;                // N; 0 selects the command default
    int order = 0;               // order M, depth n, ell, node count
    int k = 0;
    std::string parity;          // even/odd/both, plus/minus for verify-prope
    std::string function = "h0";
    double s_min = 0.0, s_max = 0.0;
    int points = 0;
    std::optional<double> tol;
    long p = 2;
    std::string suite = "all";
    std::string c = "0.25";
    int max_n = 4096;
    Format format = Format::Json;
    std::string out;
};

struct CommandResult {
    nlohmann::ordered_json report;
    std::string csv;
    bool ok = true;
};

// Invalid flag values; maps to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CommandResult run(const RunConfig& config);

}  // namespace prolate::cli
