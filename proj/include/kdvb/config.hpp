#pragma once

#include "kdvb/scenarios.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdvb {

/// Bad configuration input. line() is 1-based, or 0 when the problem is not
/// tied to a single line (e.g. a missing key).
class ConfigError : public std::invalid_argument {
public:
    ConfigError(int line, const std::string& message);

    int line() const noexcept { return line_; }

private:
    int line_;
};

struct RunConfig {
    std::string scenario;
    double lambda = 0.0;

    std::optional<double> h;
    std::optional<double> dt;
    std::optional<double> theta;
    std::optional<double> stop_time;
    std::optional<std::vector<double>> record_times;
    std::optional<BoundaryMode> boundary;  // example1 only

    double threshold = 0.5;  // minimum peak height reported
    std::string output_dir = ".";
};

/// Parses `key=value` lines. '#' starts a comment; blank lines are skipped.
/// Recognised keys: scenario, lambda, h, dt, theta, stop_time, record_times
/// (comma separated), boundary (neumann|exact), threshold, output_dir.
/// The result is checked with resolve_scenario before it is returned.
RunConfig parse_config(const std::string& text);

/// Scenario defaults with the overrides applied. Throws ConfigError when h
/// does not split the interval into a whole number of cells or a record time
/// is not a multiple of dt.
Scenario resolve_scenario(const RunConfig& config);

}  // namespace kdvb
