#include "stirap/sweep.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace stirap {

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 9> kNames{{
    {SweepParameter::Peak, "Omega"},
    {SweepParameter::Coupling, "g"},
    {SweepParameter::Delay, "tau"},
    {SweepParameter::Width, "T"},
    {SweepParameter::Detuning, "Delta"},
    {SweepParameter::LossRate, "gamma"},
    {SweepParameter::Exponent1, "eta1"},
    {SweepParameter::Exponent2, "eta2"},
    {SweepParameter::Step, "delta"},
}};

}  // namespace

std::string_view parameter_name(SweepParameter p) {
    for (const auto& [param, name] : kNames) {
        if (param == p) return name;
    }
    throw std::invalid_argument("unknown sweep parameter");
}

SweepParameter parse_parameter(std::string_view name) {
    for (const auto& [param, n] : kNames) {
        if (n == name) return param;
    }
    throw ConfigError("sweep.axes.param", "unknown parameter '" + std::string(name) + "'");
}

void apply_parameter(ModelParams<double>& params, SweepParameter p, double value) {
    switch (p) {
        case SweepParameter::Peak: params.pulses.peak = value; break;
        case SweepParameter::Coupling:
            params.spectral1.amplitude = value;
            params.spectral2.amplitude = value;
            break;
        case SweepParameter::Delay: params.pulses.delay = value; break;
        case SweepParameter::Width: params.pulses.width = value; break;
        case SweepParameter::Detuning: params.detuning = value; break;
        case SweepParameter::LossRate: params.loss_rate = value; break;
        case SweepParameter::Exponent1: params.spectral1.exponent = value; break;
        case SweepParameter::Exponent2: params.spectral2.exponent = value; break;
        case SweepParameter::Step: params.step = value; break;
    }
}

double read_parameter(const ModelParams<double>& params, SweepParameter p) {
    switch (p) {
        case SweepParameter::Peak: return params.pulses.peak;
        case SweepParameter::Coupling: return params.spectral1.amplitude;
        case SweepParameter::Delay: return params.pulses.delay;
        case SweepParameter::Width: return params.pulses.width;
        case SweepParameter::Detuning: return params.detuning;
        case SweepParameter::LossRate: return params.loss_rate;
        case SweepParameter::Exponent1: return params.spectral1.exponent;
        case SweepParameter::Exponent2: return params.spectral2.exponent;
        case SweepParameter::Step: return params.step;
    }
    throw std::invalid_argument("unknown sweep parameter");
}

SweepAxis SweepAxis::linear(SweepParameter p, double min, double max, Index count) {
    SweepAxis axis{p, min, max, count, {}};
    validate(axis);
    return axis;
}

SweepAxis SweepAxis::list(SweepParameter p, std::vector<double> values) {
    SweepAxis axis{p, 0, 0, 0, std::move(values)};
    if (!axis.explicit_values.empty()) {
        axis.min = axis.explicit_values.front();
        axis.max = axis.explicit_values.back();
        axis.count = static_cast<Index>(axis.explicit_values.size());
    }
    validate(axis);
    return axis;
}

std::vector<double> SweepAxis::values() const {
    if (!explicit_values.empty()) return explicit_values;
    std::vector<double> v(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] = min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    v.back() = max;
    return v;
}

Index SweepAxis::size() const {
    return explicit_values.empty() ? count : static_cast<Index>(explicit_values.size());
}

void validate(const SweepAxis& axis) {
    const std::string field = "sweep.axes." + std::string(parameter_name(axis.parameter));
    if (!axis.explicit_values.empty()) {
        for (double v : axis.explicit_values) {
            if (!std::isfinite(v)) throw ConfigError(field, "values must be finite");
        }
        if (axis.count != static_cast<Index>(axis.explicit_values.size())) throw ConfigError(field, "count does not match values");
        return;
    }
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) throw ConfigError(field, "bounds must be finite");
    if (!(axis.min < axis.max)) throw ConfigError(field, "min must be < max");
    if (axis.count < 2) throw ConfigError(field, "count must be >= 2");
}

std::size_t SweepResult::failures() const {
    std::size_t n = 0;
    for (const auto& p : points) n += p.converged ? 0 : 1;
    return n;
}

SweepPoint run_point(const ModelParams<double>& params, const SweepOptions& options) {
    SweepPoint point;
    try {
        const auto sys = build_hamiltonian(params);
        const auto window = default_window(sys.pulses, options.tail_widths);
        const auto traj = evolve_pure(sys, window, options.integrator);
        point.fidelity = transfer_fidelity(traj);
        point.final_partition = partition_at(traj, traj.size() - 1);
        point.converged = true;
    } catch (const std::exception& e) {
        point.fidelity = std::numeric_limits<double>::quiet_NaN();
        point.converged = false;
        point.error = e.what();
    }
    return point;
}

SweepResult run_sweep(const ModelParams<double>& base, const std::vector<SweepAxis>& axes, const SweepOptions& options) {
    if (axes.empty() || axes.size() > 2) throw ConfigError("sweep.axes", "expected one or two axes");
    for (const auto& axis : axes) validate(axis);
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
        throw ConfigError("sweep.axes", "axes must name distinct parameters");
    }
    validate(options.integrator);

    const auto values1 = axes[0].values();
    const auto values2 = axes.size() == 2 ? axes[1].values() : std::vector<double>{};
    const std::size_t cols = axes.size() == 2 ? values2.size() : 1;
    const std::size_t total = values1.size() * cols;

    SweepResult result{base, axes, std::vector<SweepPoint>(total)};

    auto run_index = [&](std::size_t idx) {
        const std::size_t i = idx / cols;
        const std::size_t j = idx % cols;
        ModelParams<double> params = base;
        std::vector<double> coords{values1[i]};
        apply_parameter(params, axes[0].parameter, values1[i]);
        if (axes.size() == 2) {
            coords.push_back(values2[j]);
            apply_parameter(params, axes[1].parameter, values2[j]);
        }
        SweepPoint point = run_point(params, options);
        point.coords = std::move(coords);
        result.points[idx] = std::move(point);
    };

    unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < total; ++idx) run_index(idx);
        return result;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) run_index(idx);
            });
        }
    }
    return result;
}

std::vector<SweepAxis> with_resolution(std::vector<SweepAxis> axes, Index points) {
    if (points < 2) throw ConfigError("sweep.points", "must be >= 2");
    for (auto& axis : axes) {
        if (axis.explicit_values.empty()) axis.count = points;
    }
    return axes;
}

}  // namespace stirap
