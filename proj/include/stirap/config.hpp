#pragma once

#include "stirap/sweep.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stirap {

inline constexpr std::string_view kToolName = "stirap";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

// One run of the CLI. Exactly one of `preset` / `params` fixes the physics.
struct RunConfig {
    std::optional<std::string> preset;
    Index variant{0};  // line of a time-trace preset
    std::optional<ModelParams<double>> params;

    std::optional<TimeWindow<double>> window;  // explicit window; else +-(tau/2 + tail_widths*T)
    double tail_widths{5};
    IntegratorConfig<double> integrator{};

    Propagator propagator{Propagator::Pure};
    Index lindblad_mode_cap{64};

    std::string output_path;  // empty: standard output
    OutputFormat format{OutputFormat::Csv};

    std::vector<SweepAxis> sweep_axes;
    unsigned workers{0};
    std::optional<Index> grid_points;  // overrides preset grid resolution

    bool operator==(const RunConfig&) const = default;
};

// Parses and validates a JSON config document. Throws ConfigError naming the
// offending field, or reporting line/column for syntax errors.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Canonical JSON; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg, int indent = 2);

void validate(const RunConfig& cfg);

// The physical parameters the config describes (preset base with the chosen
// variant applied, or the explicit params).
ModelParams<double> resolve_params(const RunConfig& cfg);

// Sweep axes: explicit ones, else the preset's (with grid_points applied).
std::vector<SweepAxis> resolve_axes(const RunConfig& cfg);

TimeWindow<double> resolve_window(const RunConfig& cfg, const ModelParams<double>& params);

// FNV-1a 64 of the compact canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace stirap
