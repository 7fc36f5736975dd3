#include "stirap/commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace stirap {

namespace {

std::string axis_description(const SweepAxis& axis) {
    std::ostringstream s;
    s << parameter_name(axis.parameter);
    if (axis.explicit_values.empty()) {
        s << " linear min=" << format_number(axis.min) << " max=" << format_number(axis.max) << " count=" << axis.count;
    } else {
        s << " values=";
        for (std::size_t i = 0; i < axis.explicit_values.size(); ++i) s << (i ? ";" : "") << format_number(axis.explicit_values[i]);
    }
    return s.str();
}

RunConfig physics_only(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.output_path.clear();
    c.workers = 0;
    return c;
}

double final_fidelity(const ModelParams<double>& params, const RunConfig& cfg, double tail_widths) {
    const auto sys = build_hamiltonian(params);
    const auto window = default_window(sys.pulses, tail_widths);
    const auto traj = cfg.propagator == Propagator::Pure ? evolve_pure(sys, window, cfg.integrator)
                                                         : evolve_lindblad(sys, window, cfg.integrator);
    return transfer_fidelity(traj);
}

template <typename Fn>
int guarded(std::ostream& diag, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IntegrationError& e) {
        diag << "integration error: " << e.what() << '\n';
        return kExitIntegrationError;
    }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> run_metadata(const RunConfig& cfg, std::string_view command) {
    const auto canonical = physics_only(cfg);
    return {{"tool", std::string(kToolName) + " " + std::string(kToolVersion)},
            {"command", std::string(command)},
            {"config", serialize_config(canonical, -1)},
            {"config_hash", config_hash(canonical)}};
}

StateTrajectory<double> run_trajectory(const RunConfig& cfg) {
    const auto params = resolve_params(cfg);
    const auto sys = build_hamiltonian(params);
    const auto window = resolve_window(cfg, params);
    if (cfg.propagator == Propagator::Lindblad) return evolve_lindblad(sys, window, cfg.integrator);
    return evolve_pure(sys, window, cfg.integrator);
}

Table trajectory_table(const RunConfig& cfg, const StateTrajectory<double>& traj) {
    Table table;
    table.metadata = run_metadata(cfg, "evolve");
    table.metadata.emplace_back("propagator", traj.kind == Propagator::Pure ? "pure" : "lindblad");
    table.metadata.emplace_back("basis", "Spin1,ModeA1,Bath(1.." + std::to_string(traj.basis.bath_modes()) + "),ModeA2,Spin2");
    table.metadata.emplace_back("window", format_number(traj.times.front()) + " " + format_number(traj.times.back()));
    table.columns = {"t", "F1", "F2", "p_modes", "p_continuum", "p_vacuum", "norm"};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto part = partition_at(traj, i);
        table.rows.push_back({traj.times[i], part.spin1, part.spin2, part.modes, part.continuum, part.vacuum, sector_norm(traj, i)});
    }
    return table;
}

SweepResult run_config_sweep(const RunConfig& cfg) {
    if (cfg.propagator != Propagator::Pure) throw ConfigError("propagator", "sweeps use the pure-state propagator only");
    const auto axes = resolve_axes(cfg);
    if (axes.empty()) throw ConfigError("sweep.axes", "no sweep axes configured");
    SweepOptions options;
    options.tail_widths = cfg.tail_widths;
    options.integrator = cfg.integrator;
    options.workers = cfg.workers;
    auto base = cfg.preset ? find_preset(*cfg.preset).base : resolve_params(cfg);
    return run_sweep(base, axes, options);
}

Table sweep_table(const RunConfig& cfg, const SweepResult& result) {
    Table table;
    table.metadata = run_metadata(cfg, "sweep");
    for (std::size_t a = 0; a < result.axes.size(); ++a) {
        table.metadata.emplace_back("axis" + std::to_string(a + 1), axis_description(result.axes[a]));
    }
    table.metadata.emplace_back("points", std::to_string(result.points.size()));
    table.metadata.emplace_back("failures", std::to_string(result.failures()));
    for (const auto& axis : result.axes) table.columns.emplace_back(parameter_name(axis.parameter));
    table.columns.emplace_back("F");
    table.columns.emplace_back("converged");
    for (const auto& point : result.points) {
        std::vector<Cell> row(point.coords.begin(), point.coords.end());
        row.emplace_back(point.fidelity);
        row.emplace_back(point.converged ? 1.0 : 0.0);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ConvergenceReport converge_study(const RunConfig& cfg) {
    ConvergenceReport report;
    auto& table = report.table;
    table.metadata = run_metadata(cfg, "converge");
    table.columns = {"study", "delta", "N", "tail_widths", "F", "abs_diff", "threshold", "verdict"};

    const auto params = resolve_params(cfg);
    const double k = cfg.tail_widths;
    std::vector<double> delta_f, window_f;

    auto add_row = [&](const std::string& study, const ModelParams<double>& p, double widths, double f,
                       const std::vector<double>& previous, double threshold) {
        std::vector<Cell> row{study, p.step, static_cast<double>(bath_mode_count(p.spectral1.cutoff, p.step)), widths, f};
        if (previous.empty()) {
            row.insert(row.end(), {std::string(), std::string(), std::string()});
        } else {
            const double diff = std::abs(f - previous.back());
            row.insert(row.end(), {diff, threshold, std::string(diff < threshold ? "PASS" : "FAIL")});
        }
        table.rows.push_back(std::move(row));
    };

    try {
        for (double divisor : {1.0, 2.0, 4.0}) {
            auto p = params;
            p.step = params.step / divisor;
            const double f = final_fidelity(p, cfg, k);
            add_row("delta", p, k, f, delta_f, kDeltaTolerance);
            delta_f.push_back(f);
        }
        for (double extra : {0.0, 1.0, 2.0}) {
            const double f = final_fidelity(params, cfg, k + extra);
            add_row("window", params, k + extra, f, window_f, kWindowTolerance);
            window_f.push_back(f);
        }
    } catch (const IntegrationError& e) {
        report.error = e.what();
        table.metadata.emplace_back("error", e.what());
        return report;
    }

    report.delta_difference = std::abs(delta_f[0] - delta_f[1]);
    report.window_difference = std::abs(window_f[0] - window_f[2]);
    report.delta_pass = report.delta_difference < kDeltaTolerance;
    report.window_pass = report.window_difference < kWindowTolerance;
    table.metadata.emplace_back("delta_check", "|F(delta)-F(delta/2)| = " + format_number(report.delta_difference) + " " +
                                                   (report.delta_pass ? "PASS" : "FAIL"));
    table.metadata.emplace_back("window_check", "|F(" + format_number(k) + "T)-F(" + format_number(k + 2) +
                                                    "T)| = " + format_number(report.window_difference) + " " +
                                                    (report.window_pass ? "PASS" : "FAIL"));
    return report;
}

Table presets_table() {
    Table table;
    table.metadata = {{"tool", std::string(kToolName) + " " + std::string(kToolVersion)}, {"command", "presets"}};
    table.columns = {"name", "kind", "Omega", "g", "tau", "T", "Delta", "gamma", "eta1", "eta2", "omega_c", "delta",
                     "axis1", "axis2", "description"};
    for (const auto& p : figure_presets()) {
        const auto& b = p.base;
        table.rows.push_back({p.name, std::string(p.kind == PresetKind::Grid ? "grid" : "time_traces"), b.pulses.peak,
                              b.spectral1.amplitude, b.pulses.delay, b.pulses.width, b.detuning, b.loss_rate,
                              b.spectral1.exponent, b.spectral2.exponent, b.spectral1.cutoff, b.step,
                              axis_description(p.axes[0]), p.axes.size() > 1 ? axis_description(p.axes[1]) : std::string(),
                              p.description});
    }
    return table;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto traj = run_trajectory(cfg);
        write_table_file(cfg.output_path, trajectory_table(cfg, traj), cfg.format);
        return static_cast<int>(kExitOk);
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto result = run_config_sweep(cfg);
        write_table_file(cfg.output_path, sweep_table(cfg, result), cfg.format);
        const auto failed = result.failures();
        if (failed == 0) return static_cast<int>(kExitOk);
        diag << failed << " of " << result.points.size() << " sweep points failed\n";
        for (const auto& p : result.points) {
            if (!p.converged) diag << "  point failed: " << p.error << '\n';
        }
        return static_cast<int>(kExitSweepFailures);
    });
}

int cmd_converge(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const auto report = converge_study(cfg);
        write_table_file(cfg.output_path, report.table, cfg.format);
        if (report.error) {
            diag << "integration error: " << *report.error << '\n';
            return static_cast<int>(kExitIntegrationError);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_presets(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        write_table_file(cfg.output_path, presets_table(), cfg.format);
        return static_cast<int>(kExitOk);
    });
}

}  // namespace stirap
