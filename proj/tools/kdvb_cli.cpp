// Command-line driver: `kdvb solve <config>` and `kdvb sweep <config> --lambda a,b,...`.
#include "kdvb/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kdvb::ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KdV-Burgers solver (extended cubic B-spline collocation, Crank-Nicolson)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::vector<double> lambdas;

    auto* solve = app.add_subcommand("solve", "Run one configuration");
    solve->add_option("config", config_path, "key=value configuration file")->required();
    solve->add_option("--output-dir", output_dir, "Directory for CSV output (overrides the config)");

    auto* sweep = app.add_subcommand("sweep", "Run the configuration for several lambda values");
    sweep->add_option("config", config_path, "key=value configuration file")->required();
    sweep->add_option("--lambda", lambdas, "Comma separated lambda values")->required()->delimiter(',');
    sweep->add_option("--output-dir", output_dir, "Directory for CSV output (overrides the config)");

    CLI11_PARSE(app, argc, argv);

    try {
        kdvb::RunConfig config = kdvb::parse_config(read_file(config_path));
        if (!output_dir.empty()) config.output_dir = output_dir;
        if (*solve) {
            kdvb::run(config, std::cout);
        } else {
            kdvb::sweep_lambda(config, lambdas, std::cout);
        }
    } catch (const kdvb::StepFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error (" << config_path << "): " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
