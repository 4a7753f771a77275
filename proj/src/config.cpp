#include "kdvb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace kdvb {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, int line, const std::string& key) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ConfigError(line, "'" + key + "' expects a number, got '" + text + "'");
    }
    return value;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_number(trim(item), line, key));
    if (out.empty()) throw ConfigError(line, "'" + key + "' expects at least one value");
    return out;
}

// Line on which each key was set, for attributing constraint errors.
using LineMap = std::map<std::string, int>;

int line_of(const LineMap& lines, const std::string& key) {
    const auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
}

Scenario resolve(const RunConfig& config, const LineMap& lines) {
    if (config.scenario != "example1" && config.scenario != "example2") {
        throw ConfigError(line_of(lines, "scenario"),
                          "unknown scenario '" + config.scenario + "' (expected example1 or example2)");
    }

    Scenario s;
    if (config.scenario == "example1") {
        const double theta = config.theta.value_or(0.004);
        const double stop = config.stop_time.value_or(1.0);
        s = make_example1(theta, stop, config.boundary.value_or(BoundaryMode::exact));
    } else {
        if (config.boundary == BoundaryMode::exact) {
            throw ConfigError(line_of(lines, "boundary"), "example2 has no exact boundary data");
        }
        s = make_example2();
        if (config.theta) s.params.theta = *config.theta;
        if (config.stop_time) {
            const double stop = *config.stop_time;
            std::vector<double> kept;
            for (double t : s.record_times)
                if (t < stop) kept.push_back(t);
            kept.push_back(stop);
            s.record_times = kept;
            s.stop_time = stop;
        }
    }

    if (config.theta && !(*config.theta >= 0.0)) {
        throw ConfigError(line_of(lines, "theta"), "theta must be nonnegative");
    }
    if (config.dt) {
        if (!(*config.dt > 0.0)) throw ConfigError(line_of(lines, "dt"), "dt must be positive");
        s.params.dt = *config.dt;
    }
    if (config.h) {
        const double h = *config.h;
        if (!(h > 0.0)) throw ConfigError(line_of(lines, "h"), "h must be positive");
        const double cells = (s.b - s.a) / h;
        const double rounded = std::round(cells);
        if (std::abs(cells - rounded) > 1e-9 * rounded || rounded < 4.0) {
            std::ostringstream msg;
            msg << "h = " << h << " does not divide [" << s.a << ", " << s.b << "] into at least 4 equal cells";
            throw ConfigError(line_of(lines, "h"), msg.str());
        }
        s.grid_cells = static_cast<int>(rounded);
    }
    if (config.record_times) {
        s.record_times = *config.record_times;
        s.stop_time = s.record_times.back();
    }

    const int rt_line = line_of(lines, config.record_times ? "record_times" : "stop_time");
    double previous = -1.0;
    for (double t : s.record_times) {
        if (t < 0.0 || t <= previous) {
            throw ConfigError(rt_line, "record times must be nonnegative and strictly increasing");
        }
        try {
            steps_to(t, s.params.dt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(rt_line, e.what());
        }
        previous = t;
    }
    return s;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    LineMap lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(number, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (lines.count(key)) throw ConfigError(number, "duplicate key '" + key + "'");

        if (key == "scenario") {
            config.scenario = value;
        } else if (key == "lambda") {
            config.lambda = parse_number(value, number, key);
        } else if (key == "h") {
            config.h = parse_number(value, number, key);
        } else if (key == "dt") {
            config.dt = parse_number(value, number, key);
        } else if (key == "theta") {
            config.theta = parse_number(value, number, key);
        } else if (key == "stop_time") {
            config.stop_time = parse_number(value, number, key);
        } else if (key == "record_times") {
            config.record_times = parse_list(value, number, key);
        } else if (key == "threshold") {
            config.threshold = parse_number(value, number, key);
        } else if (key == "boundary") {
            if (value == "neumann") config.boundary = BoundaryMode::neumann;
            else if (value == "exact") config.boundary = BoundaryMode::exact;
            else throw ConfigError(number, "boundary must be 'neumann' or 'exact', got '" + value + "'");
        } else if (key == "output_dir") {
            if (value.empty()) throw ConfigError(number, "output_dir is empty");
            config.output_dir = value;
        } else {
            throw ConfigError(number, "unknown key '" + key + "'");
        }
        lines[key] = number;
    }
    if (config.scenario.empty()) throw ConfigError(0, "missing required key 'scenario'");
    if (config.record_times && config.stop_time && config.record_times->back() != *config.stop_time) {
        throw ConfigError(line_of(lines, "stop_time"), "stop_time must equal the last record time");
    }
    resolve(config, lines);
    return config;
}

Scenario resolve_scenario(const RunConfig& config) { return resolve(config, {}); }

}  // namespace kdvb
