#pragma once

#include "stirap/output.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace stirap {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitIntegrationError = 2,
    kExitSweepFailures = 3,
};

// Metadata shared by every output file. The config echo and hash leave out the
// output location and worker count, so they depend on the physics only.
std::vector<std::pair<std::string, std::string>> run_metadata(const RunConfig& cfg, std::string_view command);

StateTrajectory<double> run_trajectory(const RunConfig& cfg);

// Columns t, F1, F2, p_modes, p_continuum, p_vacuum, norm.
Table trajectory_table(const RunConfig& cfg, const StateTrajectory<double>& traj);

SweepResult run_config_sweep(const RunConfig& cfg);

// Columns <axis1>, [<axis2>], F, converged.
Table sweep_table(const RunConfig& cfg, const SweepResult& result);

struct ConvergenceReport {
    Table table;
    double delta_difference{0};   // |F(delta) - F(delta/2)|
    double window_difference{0};  // |F(k T) - F((k+2) T)|
    bool delta_pass{false};
    bool window_pass{false};
    std::optional<std::string> error;  // set when a refinement failed; table is partial
};

inline constexpr double kDeltaTolerance = 1e-3;
inline constexpr double kWindowTolerance = 1e-6;

// F at delta, delta/2, delta/4 and at tail widths k, k+1, k+2.
ConvergenceReport converge_study(const RunConfig& cfg);

Table presets_table();

int cmd_evolve(const RunConfig& cfg, std::ostream& diag);
int cmd_sweep(const RunConfig& cfg, std::ostream& diag);
int cmd_converge(const RunConfig& cfg, std::ostream& diag);
int cmd_presets(const RunConfig& cfg, std::ostream& diag);

}  // namespace stirap
