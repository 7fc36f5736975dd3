#pragma once

#include "stirap/model.hpp"
#include "stirap/ode.hpp"

#include <Eigen/Sparse>

#include <optional>
#include <type_traits>
#include <vector>

namespace stirap {

template <typename Scalar = double>
struct IntegratorConfig {
    Scalar rtol{1e-9};
    Scalar atol{1e-12};
    Scalar initial_step{1e-3};
    Scalar max_step{0};  // <= 0: no limit beyond the window length
    Index samples{256};
    long max_steps{10'000'000};

    bool operator==(const IntegratorConfig&) const = default;
};

template <typename Scalar>
void validate(const IntegratorConfig<Scalar>& cfg) {
    if (!(cfg.rtol > 0)) throw ConfigError("integrator.rtol", "must be > 0");
    if (!(cfg.atol > 0)) throw ConfigError("integrator.atol", "must be > 0");
    if (!(cfg.initial_step >= 0)) throw ConfigError("integrator.initial_step", "must be >= 0");
    if (cfg.samples < 2) throw ConfigError("integrator.samples", "must be >= 2");
    if (cfg.max_steps < 1) throw ConfigError("integrator.max_steps", "must be >= 1");
}

template <typename Scalar = double>
struct TimeWindow {
    Scalar start;
    Scalar end;

    bool operator==(const TimeWindow&) const = default;
};

template <typename Scalar>
void validate(const TimeWindow<Scalar>& w) {
    if (!(w.start < w.end)) throw ConfigError("window", "t_start must be < t_end");
}

// +-(tau/2 + tail_widths * T) around the pulse centre.
template <typename Scalar>
TimeWindow<Scalar> default_window(const PulsePair<Scalar>& pulses, Scalar tail_widths = 5) {
    const Scalar half = pulses.delay / 2 + tail_widths * pulses.width;
    return {-half, half};
}

template <typename Scalar>
std::vector<Scalar> sample_times(const TimeWindow<Scalar>& w, Index count) {
    std::vector<Scalar> t(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
        t[static_cast<std::size_t>(i)] = w.start + (w.end - w.start) * static_cast<Scalar>(i) / static_cast<Scalar>(count - 1);
    }
    t.back() = w.end;
    return t;
}

enum class Propagator { Pure, Lindblad };

// Samples of one propagation. The pure path fills `amplitudes` (length M, the
// vacuum weight is 1 - |psi|^2); the Lindblad path fills `densities`
// ((M+1) x (M+1), vacuum last).
template <typename Scalar = double>
struct StateTrajectory {
    Basis<Scalar> basis;
    Propagator kind;
    std::vector<Scalar> times;
    std::vector<ComplexVector<Scalar>> amplitudes;
    std::vector<ComplexMatrix<Scalar>> densities;

    std::size_t size() const { return times.size(); }
};

// H(t) - i diag(loss).
template <typename Scalar>
ComplexMatrix<Scalar> effective_hamiltonian_at(const HamiltonianSystem<Scalar>& sys, Scalar t) {
    using C = std::complex<Scalar>;
    ComplexMatrix<Scalar> h = hamiltonian_at(sys, t);
    h.diagonal() -= C(0, 1) * sys.loss.template cast<C>();
    return h;
}

// out = H_eff(t) psi using the arrow structure of the Hamiltonian, O(M).
template <typename Scalar>
void apply_effective_hamiltonian(const HamiltonianSystem<Scalar>& sys, Scalar t, const ComplexVector<Scalar>& psi,
                                 ComplexVector<Scalar>& out) {
    using C = std::complex<Scalar>;
    const auto& b = sys.basis;
    const Index n = b.bath_modes();
    const auto links = sys.links_at(t);

    out = (sys.static_part.diagonal().template cast<C>() - C(0, 1) * sys.loss.template cast<C>()).cwiseProduct(psi);

    const auto bath = psi.segment(b.first_bath(), n);
    const C a1 = psi(b.mode_a1());
    const C a2 = psi(b.mode_a2());

    out(b.spin1()) += links.side1 * a1;
    out(b.mode_a1()) += links.side1 * psi(b.spin1()) + sys.coupling1.template cast<C>().dot(bath);
    out.segment(b.first_bath(), n) += sys.coupling1.template cast<C>() * a1 + sys.coupling2.template cast<C>() * a2;
    out(b.mode_a2()) += links.side2 * psi(b.spin2()) + sys.coupling2.template cast<C>().dot(bath);
    out(b.spin2()) += links.side2 * a2;
}

template <typename Scalar>
ComplexVector<Scalar> initial_amplitudes(const Basis<Scalar>& basis, Index state = Basis<Scalar>::spin1()) {
    ComplexVector<Scalar> psi = ComplexVector<Scalar>::Zero(basis.dim());
    psi(state) = 1;
    return psi;
}

template <typename Scalar>
ComplexMatrix<Scalar> initial_density(const Basis<Scalar>& basis, Index state = Basis<Scalar>::spin1()) {
    ComplexMatrix<Scalar> rho = ComplexMatrix<Scalar>::Zero(basis.dim() + 1, basis.dim() + 1);
    rho(state, state) = 1;
    return rho;
}

namespace detail {

template <typename Scalar>
StepControl<Scalar> step_control(const IntegratorConfig<Scalar>& cfg) {
    return {cfg.rtol, cfg.atol, cfg.initial_step, cfg.max_step, cfg.max_steps};
}

}  // namespace detail

// Integrates d psi/dt = -i H_eff(t) psi. Jumps only feed the vacuum, so the
// unnormalized amplitude vector plus vacuum weight 1 - |psi|^2 is the exact
// solution of the master equation for any single-excitation initial state.
template <typename Scalar>
StateTrajectory<Scalar> evolve_pure(const HamiltonianSystem<Scalar>& sys, const TimeWindow<Scalar>& window,
                                    const IntegratorConfig<Scalar>& cfg,
                                    std::optional<std::type_identity_t<ComplexVector<Scalar>>> initial = std::nullopt) {
    using C = std::complex<Scalar>;
    validate(window);
    validate(cfg);

    ComplexVector<Scalar> psi0 = initial ? std::move(*initial) : initial_amplitudes(sys.basis);
    if (psi0.size() != sys.dim()) throw std::invalid_argument("initial amplitude vector has the wrong dimension");

    StateTrajectory<Scalar> traj{sys.basis, Propagator::Pure, {}, {}, {}};
    traj.times.reserve(static_cast<std::size_t>(cfg.samples));
    traj.amplitudes.reserve(static_cast<std::size_t>(cfg.samples));
    const auto times = sample_times(window, cfg.samples);

    // Integrate phi = exp(i e0 (t - t0)) psi, with e0 the spin energy; psi is
    // restored at each sample.
    const Scalar e0 = sys.static_part(sys.basis.spin1(), sys.basis.spin1());
    const Scalar t0 = window.start;
    ComplexVector<Scalar> work(sys.dim());
    auto rhs = [&](Scalar t, const ComplexVector<Scalar>& y, ComplexVector<Scalar>& dydt) {
        apply_effective_hamiltonian(sys, t, y, work);
        dydt = C(0, -1) * (work - e0 * y);
    };
    auto observe = [&](Scalar t, const ComplexVector<Scalar>& y) {
        traj.times.push_back(t);
        traj.amplitudes.push_back(e0 == 0 ? y : ComplexVector<Scalar>(std::polar(Scalar(1), -e0 * (t - t0)) * y));
    };
    integrate_dopri5<Scalar>(rhs, std::move(psi0), std::span<const Scalar>(times), detail::step_control(cfg), observe);
    return traj;
}

// Integrates the full master equation
//   d rho/dt = -i [H(t), rho] + gamma sum_j (2 b_j rho b_j^+ - {b_j^+ b_j, rho})
// on the single-excitation sector plus vacuum, with b_j = |vac><Bath(j)|.
template <typename Scalar>
StateTrajectory<Scalar> evolve_lindblad(const HamiltonianSystem<Scalar>& sys, const TimeWindow<Scalar>& window,
                                        const IntegratorConfig<Scalar>& cfg,
                                        std::optional<std::type_identity_t<ComplexMatrix<Scalar>>> initial = std::nullopt) {
    using C = std::complex<Scalar>;
    using Sparse = Eigen::SparseMatrix<C>;
    validate(window);
    validate(cfg);

    const auto& b = sys.basis;
    const Index dim = b.dim() + 1;
    ComplexMatrix<Scalar> rho0 = initial ? std::move(*initial) : initial_density(b);
    if (rho0.rows() != dim || rho0.cols() != dim) throw std::invalid_argument("initial density matrix has the wrong dimension");

    std::vector<Sparse> jumps;
    Sparse number(dim, dim);
    for (Index j = 1; j <= b.bath_modes(); ++j) {
        const Scalar rate = sys.loss(b.bath(j));
        if (rate == 0) continue;
        Sparse jump(dim, dim);
        jump.insert(b.vacuum(), b.bath(j)) = std::sqrt(rate);
        jump.makeCompressed();
        number += Sparse(jump.adjoint() * jump);
        jumps.push_back(std::move(jump));
    }

    ComplexMatrix<Scalar> h = ComplexMatrix<Scalar>::Zero(dim, dim);
    h.topLeftCorner(b.dim(), b.dim()) = sys.static_part.template cast<C>();
    ComplexMatrix<Scalar> hr(dim, dim), dissipated(dim, dim);

    auto rhs = [&](Scalar t, const ComplexMatrix<Scalar>& r, ComplexMatrix<Scalar>& drdt) {
        const auto links = sys.links_at(t);
        h(b.spin1(), b.mode_a1()) = h(b.mode_a1(), b.spin1()) = links.side1;
        h(b.mode_a2(), b.spin2()) = h(b.spin2(), b.mode_a2()) = links.side2;

        hr.noalias() = h * r;
        drdt = hr;
        drdt.noalias() -= r * h;
        drdt *= C(0, -1);

        dissipated.setZero();
        for (const auto& jump : jumps) {
            dissipated += ComplexMatrix<Scalar>(jump * r) * jump.adjoint();
        }
        drdt += Scalar(2) * dissipated;
        drdt -= ComplexMatrix<Scalar>(number * r);
        drdt -= ComplexMatrix<Scalar>(r * number);
    };

    StateTrajectory<Scalar> traj{b, Propagator::Lindblad, {}, {}, {}};
    traj.times.reserve(static_cast<std::size_t>(cfg.samples));
    traj.densities.reserve(static_cast<std::size_t>(cfg.samples));
    const auto times = sample_times(window, cfg.samples);
    auto observe = [&](Scalar t, const ComplexMatrix<Scalar>& r) {
        traj.times.push_back(t);
        traj.densities.push_back(r);
    };
    integrate_dopri5<Scalar>(rhs, std::move(rho0), std::span<const Scalar>(times), detail::step_control(cfg), observe);
    return traj;
}

}  // namespace stirap
