#pragma once

#include "stirap/observables.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stirap {

enum class SweepParameter { Peak, Coupling, Delay, Width, Detuning, LossRate, Exponent1, Exponent2, Step };

// Config/CSV names: Omega, g, tau, T, Delta, gamma, eta1, eta2, delta.
std::string_view parameter_name(SweepParameter p);
SweepParameter parse_parameter(std::string_view name);

// Sets one named parameter. g updates both spectral amplitudes.
void apply_parameter(ModelParams<double>& params, SweepParameter p, double value);
double read_parameter(const ModelParams<double>& params, SweepParameter p);

// A linearly spaced axis, or an explicit list of values when `explicit_values`
// is non-empty.
struct SweepAxis {
    SweepParameter parameter{SweepParameter::Peak};
    double min{0};
    double max{1};
    Index count{2};
    std::vector<double> explicit_values;

    static SweepAxis linear(SweepParameter p, double min, double max, Index count);
    static SweepAxis list(SweepParameter p, std::vector<double> values);

    std::vector<double> values() const;
    Index size() const;

    bool operator==(const SweepAxis&) const = default;
};

void validate(const SweepAxis& axis);

struct SweepPoint {
    std::vector<double> coords;
    double fidelity{0};  // NaN when the point failed
    PopulationPartition<double> final_partition;
    bool converged{false};
    std::string error;
};

struct SweepResult {
    ModelParams<double> base;
    std::vector<SweepAxis> axes;
    std::vector<SweepPoint> points;  // row-major over (axis1, axis2)

    std::size_t failures() const;
};

struct SweepOptions {
    double tail_widths{5};
    IntegratorConfig<double> integrator{};
    unsigned workers{0};  // 0: hardware concurrency, 1: serial
};

// Runs evolve_pure at every grid point and records F = F2(t_end). Each point
// gets its own window from its own tau and T. Failed points are recorded and
// do not stop the sweep. The table does not depend on the worker count.
SweepResult run_sweep(const ModelParams<double>& base, const std::vector<SweepAxis>& axes, const SweepOptions& options);

// Runs a single parameter point the way run_sweep does.
SweepPoint run_point(const ModelParams<double>& params, const SweepOptions& options);

enum class PresetKind { TimeTraces, Grid };

struct FigurePreset {
    std::string name;
    std::string description;
    PresetKind kind;
    ModelParams<double> base;
    std::vector<SweepAxis> axes;
};

// fig2b, fig2c, fig2d, fig2d_text, fig3, fig3b, fig4a, fig4b, fig5.
const std::vector<FigurePreset>& figure_presets();
const FigurePreset& find_preset(std::string_view name);

// Replaces every linear axis count with `points`.
std::vector<SweepAxis> with_resolution(std::vector<SweepAxis> axes, Index points);

}  // namespace stirap
