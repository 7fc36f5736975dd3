#pragma once

// Adaptive Dormand-Prince 5(4) integrator with 4th-order dense output
// (Hairer, Norsett & Wanner, "Solving ODEs I", DOPRI5). States are dense
// Eigen objects (vectors or matrices, real or complex); the right-hand side
// writes into a preallocated derivative of the same shape.

#include "stirap/types.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace stirap {

template <typename Scalar = double>
struct StepControl {
    Scalar rtol{1e-9};
    Scalar atol{1e-12};
    Scalar initial_step{1e-3};
    Scalar max_step{0};  // <= 0: unbounded
    long max_steps{10'000'000};
};

namespace detail {

template <typename Scalar>
struct Dopri5Tableau {
    static constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5, c5 = Scalar(8) / 9;

    static constexpr Scalar a21 = Scalar(1) / 5;
    static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
    static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
    static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187, a53 = Scalar(64448) / 6561,
                            a54 = Scalar(-212) / 729;
    static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33, a63 = Scalar(46732) / 5247,
                            a64 = Scalar(49) / 176, a65 = Scalar(-5103) / 18656;
    static constexpr Scalar a71 = Scalar(35) / 384, a73 = Scalar(500) / 1113, a74 = Scalar(125) / 192,
                            a75 = Scalar(-2187) / 6784, a76 = Scalar(11) / 84;

    // 5th minus embedded 4th order weights.
    static constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695, e4 = Scalar(71) / 1920,
                            e5 = Scalar(-17253) / 339200, e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;

    static constexpr Scalar d1 = Scalar(-12715105075.0L / 11282082432.0L), d3 = Scalar(87487479700.0L / 32700410799.0L),
                            d4 = Scalar(-10690763975.0L / 1880347072.0L), d5 = Scalar(701980252875.0L / 199316789632.0L),
                            d6 = Scalar(-1453857185.0L / 822651844.0L), d7 = Scalar(69997945.0L / 29380423.0L);
};

}  // namespace detail

// Integrates y' = rhs(t, y) from times.front() and calls observe(t, y) at every
// entry of `times` (strictly increasing), including the first.
//
// rhs:     void(Scalar t, const State& y, State& dydt)
// observe: void(Scalar t, const State& y)
//
// Throws IntegrationError when the step size underflows, the error estimate is
// not finite, or max_steps is exceeded.
template <typename Scalar, typename State, typename Rhs, typename Observer>
long integrate_dopri5(Rhs&& rhs, State y, std::span<const Scalar> times, const StepControl<Scalar>& ctl,
                      Observer&& observe) {
    using std::abs;
    using std::max;
    using std::min;
    using std::pow;
    using std::sqrt;
    using T = detail::Dopri5Tableau<Scalar>;

    if (times.empty()) return 0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("sample times must be strictly increasing");
    }

    Scalar t = times.front();
    const Scalar t_end = times.back();
    observe(t, static_cast<const State&>(y));
    if (times.size() == 1) return 0;

    const Scalar span = t_end - t;
    const Scalar max_step = ctl.max_step > 0 ? min(ctl.max_step, span) : span;
    Scalar h = min(ctl.initial_step > 0 ? ctl.initial_step : span * Scalar(1e-3), max_step);

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, stage = y, y_new = y;
    rhs(t, y, k1);

    std::size_t next = 1;
    long steps = 0;
    bool last_rejected = false;

    while (next < times.size()) {
        if (steps >= ctl.max_steps) throw IntegrationError(static_cast<double>(t), "maximum step count exceeded");
        ++steps;

        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }

        stage = y + h * (T::a21 * k1);
        rhs(t + T::c2 * h, stage, k2);
        stage = y + h * (T::a31 * k1 + T::a32 * k2);
        rhs(t + T::c3 * h, stage, k3);
        stage = y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3);
        rhs(t + T::c4 * h, stage, k4);
        stage = y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4);
        rhs(t + T::c5 * h, stage, k5);
        stage = y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5);
        rhs(t + h, stage, k6);
        y_new = y + h * (T::a71 * k1 + T::a73 * k3 + T::a74 * k4 + T::a75 * k5 + T::a76 * k6);
        rhs(t + h, y_new, k7);

        stage = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
        const auto scale = ctl.atol + ctl.rtol * y.array().abs().max(y_new.array().abs());
        const Scalar err = sqrt((stage.array().abs() / scale).square().mean());

        if (!std::isfinite(static_cast<double>(err))) {
            h *= Scalar(0.2);
            last_rejected = true;
        } else if (err <= 1) {
            const Scalar t_new = final_step ? t_end : t + h;
            if (next < times.size() && times[next] <= t_new) {
                // Dense output coefficients, shared by all samples inside this step.
                const State diff = y_new - y;
                const State bspl = h * k1 - diff;
                const State r4 = diff - h * k7 - bspl;
                const State r5 = h * (T::d1 * k1 + T::d3 * k3 + T::d4 * k4 + T::d5 * k5 + T::d6 * k6 + T::d7 * k7);
                while (next < times.size() && times[next] <= t_new) {
                    if (times[next] == t_new) {
                        observe(times[next], static_cast<const State&>(y_new));
                    } else {
                        const Scalar theta = (times[next] - t) / h;
                        const Scalar theta1 = 1 - theta;
                        stage = y + theta * (diff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                        observe(times[next], static_cast<const State&>(stage));
                    }
                    ++next;
                }
            }
            y.swap(y_new);
            k1.swap(k7);
            t = t_new;

            Scalar factor = err == 0 ? Scalar(5) : Scalar(0.9) * pow(err, Scalar(-0.2));
            factor = min(Scalar(5), max(Scalar(0.2), factor));
            if (last_rejected) factor = min(factor, Scalar(1));
            h = min(h * factor, max_step);
            last_rejected = false;
        } else {
            h *= max(Scalar(0.2), Scalar(0.9) * pow(err, Scalar(-0.2)));
            last_rejected = true;
        }

        if (next < times.size() && h <= Scalar(1e-14) * max(Scalar(1), abs(t))) {
            throw IntegrationError(static_cast<double>(t), "step size underflow");
        }
    }
    return steps;
}

}  // namespace stirap
