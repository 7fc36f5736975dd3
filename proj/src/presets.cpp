#include "stirap/sweep.hpp"

namespace stirap {

namespace {

// g = 10, Omega = 2, omega_c = 2, T = 2, tau = 1 (in units of T), Delta = 0,
// eta1 = eta2 = 1.5, gamma = 0, delta = omega_c / 200.
ModelParams<double> baseline() { return ModelParams<double>{}; }

ModelParams<double> with(SweepParameter p, double value) {
    auto params = baseline();
    apply_parameter(params, p, value);
    return params;
}

constexpr Index kGrid = 32;

// Step 1.25 puts g = 10 on the grid.
SweepAxis coupling_axis() { return SweepAxis::linear(SweepParameter::Coupling, 1.25, 40, kGrid); }

std::vector<FigurePreset> make_presets() {
    using P = SweepParameter;
    std::vector<FigurePreset> presets;
    presets.push_back({"fig2b", "time traces, asymmetric coupling: eta1 = 1.5, eta2 in {1.5, 1, 0.5}", PresetKind::TimeTraces,
                       baseline(), {SweepAxis::list(P::Exponent2, {1.5, 1.0, 0.5})}});
    presets.push_back({"fig2c", "time traces, detuning: Delta in {0, 5, 10}", PresetKind::TimeTraces, baseline(),
                       {SweepAxis::list(P::Detuning, {0.0, 5.0, 10.0})}});
    presets.push_back({"fig2d", "time traces, continuum loss: gamma in {0, 0.5, 1.5}", PresetKind::TimeTraces, baseline(),
                       {SweepAxis::list(P::LossRate, {0.0, 0.5, 1.5})}});
    presets.push_back({"fig2d_text", "time traces, continuum loss: gamma in {0, 0.5, 1}", PresetKind::TimeTraces, baseline(),
                       {SweepAxis::list(P::LossRate, {0.0, 0.5, 1.0})}});
    presets.push_back({"fig3", "F over Omega x g", PresetKind::Grid, baseline(),
                       {SweepAxis::linear(P::Peak, 1, 10, kGrid), coupling_axis()}});
    presets.push_back({"fig3b", "F over g at Omega in {1, 2, 5, 10}", PresetKind::Grid, baseline(),
                       {SweepAxis::list(P::Peak, {1.0, 2.0, 5.0, 10.0}), coupling_axis()}});
    presets.push_back({"fig4a", "F over Omega x tau (tau in units of T)", PresetKind::Grid, baseline(),
                       {SweepAxis::linear(P::Peak, 1, 10, kGrid), SweepAxis::linear(P::Delay, 0.5, 4, kGrid)}});
    presets.push_back({"fig4b", "F over tau x T at Omega = 2", PresetKind::Grid, with(P::Peak, 2),
                       {SweepAxis::linear(P::Delay, 0.5, 4, kGrid), SweepAxis::linear(P::Width, 1, 5, kGrid)}});
    // gamma step 0.05 puts 1.0 and 1.5 on the grid.
    presets.push_back({"fig5", "F over g x gamma", PresetKind::Grid, baseline(),
                       {coupling_axis(), SweepAxis::linear(P::LossRate, 0, 1.55, kGrid)}});
    return presets;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = make_presets();
    return presets;
}

const FigurePreset& find_preset(std::string_view name) {
    for (const auto& p : figure_presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

}  // namespace stirap
