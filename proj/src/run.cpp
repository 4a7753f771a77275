#include "kdvb/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

namespace kdvb {

namespace {

std::string tag(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

DiagnosticsRow diagnose(const Scenario& s, const NodalTable& table, const Grid& grid,
                        const SolutionState& state, double t, double threshold) {
    DiagnosticsRow row;
    row.t = t;
    row.linf = s.exact ? linf_error(state, table, grid, *s.exact, t) : std::numeric_limits<double>::quiet_NaN();
    row.invariants = conserved_quantities(state, table, grid, s.params);
    row.peaks = find_peaks(state, table, grid, threshold);
    return row;
}

struct Trajectory {
    Grid grid;
    NodalTable table;
    std::vector<Snapshot> snapshots;  // includes t = 0
};

Trajectory integrate(const Scenario& s, double lambda) {
    const Grid grid = s.grid();
    const BasisConfig cfg{lambda, grid.h()};
    const NodalTable table = nodal_table(cfg);
    const SolutionState initial =
        s.boundary ? fit_initial(grid, cfg, s.initial, s.initial_derivative, s.boundary(0.0))
                   : fit_initial(grid, cfg, s.initial, s.initial_derivative);

    Trajectory tr{grid, table, {Snapshot{0.0, initial}}};
    std::vector<double> times;
    for (double t : s.record_times)
        if (t > 0.0) times.push_back(t);
    auto later = advance(s.params, table, initial, times, s.boundary);
    tr.snapshots.insert(tr.snapshots.end(), later.begin(), later.end());
    return tr;
}

void write_profile(const std::filesystem::path& path, const Trajectory& tr, const SolutionState& state) {
    const NodalValues nv = nodal_values(state, tr.table);
    std::ofstream out = open_for_write(path);
    out << "x,U,V\n";
    for (int i = 0; i <= tr.grid.cells(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        out << format_number(tr.grid.node(i)) << ',' << format_number(nv.u[k]) << ',' << format_number(nv.v[k])
            << '\n';
    }
}

std::string summary_line(const std::string& scenario, double lambda, const DiagnosticsRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s lambda=%g t=%g linf=%.4e C1=%.6g C2=%.6g C3=%.6g C4=%.6g peaks=%zu",
                  scenario.c_str(), lambda, row.t, row.linf, row.invariants.c1, row.invariants.c2,
                  row.invariants.c3, row.invariants.c4, row.peaks.size());
    return buf;
}

// Everything except the sweep table; safe to call from several threads as long
// as the output files differ.
RunReport run_quiet(const RunConfig& config, const Scenario& s, double lambda) {
    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    const std::string stem = s.name + "_lambda" + tag(lambda);

    const Trajectory tr = integrate(s, lambda);
    RunReport report;
    report.lambda = lambda;
    for (const Snapshot& snap : tr.snapshots) {
        report.rows.push_back(diagnose(s, tr.table, tr.grid, snap.state, snap.t, config.threshold));
        if (snap.t > 0.0 || s.record_times.front() == 0.0) {
            const auto path = dir / ("profile_" + stem + "_t" + tag(snap.t) + ".csv");
            write_profile(path, tr, snap.state);
            report.files.push_back(path);
        }
    }

    const auto path = dir / ("diagnostics_" + stem + ".csv");
    std::ofstream out = open_for_write(path);
    out << diagnostics_header() << '\n';
    for (const DiagnosticsRow& row : report.rows) out << diagnostics_line(row) << '\n';
    report.files.push_back(path);
    return report;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", value);
    return buf;
}

std::string format_peaks(const std::vector<Peak>& peaks) {
    std::string out;
    for (const Peak& p : peaks) {
        if (!out.empty()) out += ';';
        out += format_number(p.position) + ':' + format_number(p.height);
    }
    return out;
}

std::string diagnostics_header() { return "t,linf,c1,c2,c3,c4,peaks"; }

std::string diagnostics_line(const DiagnosticsRow& row) {
    std::ostringstream out;
    out << format_number(row.t) << ',' << format_number(row.linf) << ',' << format_number(row.invariants.c1) << ','
        << format_number(row.invariants.c2) << ',' << format_number(row.invariants.c3) << ','
        << format_number(row.invariants.c4) << ',' << format_peaks(row.peaks);
    return out.str();
}

RunReport simulate(const Scenario& scenario, double lambda, double threshold) {
    const Trajectory tr = integrate(scenario, lambda);
    RunReport report;
    report.lambda = lambda;
    for (const Snapshot& snap : tr.snapshots)
        report.rows.push_back(diagnose(scenario, tr.table, tr.grid, snap.state, snap.t, threshold));
    return report;
}

RunReport run(const RunConfig& config, std::ostream& log) {
    const Scenario s = resolve_scenario(config);
    RunReport report = run_quiet(config, s, config.lambda);
    for (const DiagnosticsRow& row : report.rows) log << summary_line(s.name, config.lambda, row) << '\n';
    return report;
}

std::vector<RunReport> sweep_lambda(const RunConfig& config, const std::vector<double>& lambdas,
                                    std::ostream& log) {
    if (lambdas.empty()) throw std::invalid_argument("sweep_lambda: no lambda values given");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (tag(lambdas[i]) == tag(lambdas[j]))
                throw std::invalid_argument("sweep_lambda: duplicate lambda " + tag(lambdas[i]));
    const Scenario s = resolve_scenario(config);

    std::vector<std::future<RunReport>> jobs;
    jobs.reserve(lambdas.size());
    for (double lambda : lambdas) {
        jobs.push_back(std::async(std::launch::async, [&config, &s, lambda] { return run_quiet(config, s, lambda); }));
    }
    // Collect every job before rethrowing so no thread outlives the call.
    std::vector<RunReport> reports;
    std::exception_ptr failure;
    for (auto& job : jobs) {
        try {
            reports.push_back(job.get());
        } catch (...) {
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const auto path = std::filesystem::path(config.output_dir) / ("sweep_" + s.name + ".csv");
    std::ofstream out = open_for_write(path);
    out << "lambda," << diagnostics_header() << '\n';
    for (RunReport& report : reports) {
        for (const DiagnosticsRow& row : report.rows) {
            out << format_number(report.lambda) << ',' << diagnostics_line(row) << '\n';
            log << summary_line(s.name, report.lambda, row) << '\n';
        }
        report.files.push_back(path);
    }
    return reports;
}

}  // namespace kdvb
