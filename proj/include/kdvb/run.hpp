#pragma once

#include "kdvb/config.hpp"
#include "kdvb/diagnostics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace kdvb {

/// One row of the diagnostics table. linf is NaN when the scenario has no
/// exact solution.
struct DiagnosticsRow {
    double t;
    double linf;
    ConservedQuantities invariants;
    std::vector<Peak> peaks;
};

struct RunReport {
    double lambda = 0.0;
    std::vector<DiagnosticsRow> rows;  // t = 0 first, then each record time
    std::vector<std::filesystem::path> files;
};

/// Runs a scenario without touching the file system.
RunReport simulate(const Scenario& scenario, double lambda, double threshold);

/// Fits the initial state, advances through the record times, and writes
///   profile_<scenario>_lambda<l>_t<t>.csv   header x,U,V
///   diagnostics_<scenario>_lambda<l>.csv    header t,linf,c1,c2,c3,c4,peaks
/// into config.output_dir (created if needed). One summary line per row goes
/// to `log`. StepFailure propagates.
RunReport run(const RunConfig& config, std::ostream& log);

/// Independent runs for each lambda, executed concurrently, plus
/// sweep_<scenario>.csv with a leading lambda column. Reports come back in
/// the order of `lambdas`.
std::vector<RunReport> sweep_lambda(const RunConfig& config, const std::vector<double>& lambdas,
                                    std::ostream& log);

/// Serialisation used by the CSV writers.
std::string format_number(double value);
std::string format_peaks(const std::vector<Peak>& peaks);
std::string diagnostics_header();
std::string diagnostics_line(const DiagnosticsRow& row);

}  // namespace kdvb
