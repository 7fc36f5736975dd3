#pragma once

#include "stirap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stirap {

template <typename Scalar = double>
struct PopulationPartition {
    Scalar spin1{0};
    Scalar spin2{0};
    Scalar modes{0};      // a1 + a2
    Scalar continuum{0};  // all bath modes
    Scalar vacuum{0};

    Scalar total() const { return spin1 + spin2 + modes + continuum + vacuum; }
};

// Populations of every basis state at one sample, vacuum last (length M + 1).
template <typename Scalar>
Vector<Scalar> populations(const StateTrajectory<Scalar>& traj, std::size_t sample) {
    const Index m = traj.basis.dim();
    Vector<Scalar> p(m + 1);
    if (traj.kind == Propagator::Pure) {
        const auto& psi = traj.amplitudes.at(sample);
        p.head(m) = psi.cwiseAbs2();
        p(m) = Scalar(1) - p.head(m).sum();
    } else {
        p = traj.densities.at(sample).diagonal().real();
    }
    return p;
}

// |psi|^2 in the pure path, weight of the single-excitation sector otherwise.
template <typename Scalar>
Scalar sector_norm(const StateTrajectory<Scalar>& traj, std::size_t sample) {
    return populations(traj, sample).head(traj.basis.dim()).sum();
}

// Index of the sample taken at time t.
template <typename Scalar>
std::size_t sample_index(const StateTrajectory<Scalar>& traj, Scalar t) {
    using std::abs;
    if (traj.times.empty()) throw std::out_of_range("empty trajectory");
    const Scalar lo = traj.times.front();
    const Scalar hi = traj.times.back();
    const Scalar tol = Scalar(1e-9) * (hi - lo);
    if (t < lo - tol || t > hi + tol) throw std::out_of_range("time outside the sampled window");
    const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t - tol);
    if (it == traj.times.end() || abs(*it - t) > tol) throw std::out_of_range("time is not a sample time");
    return static_cast<std::size_t>(it - traj.times.begin());
}

template <typename Scalar>
PopulationPartition<Scalar> partition_at(const StateTrajectory<Scalar>& traj, std::size_t sample) {
    const auto p = populations(traj, sample);
    const auto& b = traj.basis;
    PopulationPartition<Scalar> out;
    out.spin1 = p(b.spin1());
    out.spin2 = p(b.spin2());
    out.modes = p(b.mode_a1()) + p(b.mode_a2());
    out.continuum = p.segment(b.first_bath(), b.bath_modes()).sum();
    out.vacuum = p(b.vacuum());
    return out;
}

// F1(t) = <psi_i| rho(t) |psi_i>, psi_i = Spin1.
template <typename Scalar>
Scalar fidelity_initial(const StateTrajectory<Scalar>& traj, Scalar t) {
    return populations(traj, sample_index(traj, t))(traj.basis.spin1());
}

// F2(t) = <psi_f| rho(t) |psi_f>, psi_f = Spin2.
template <typename Scalar>
Scalar fidelity_target(const StateTrajectory<Scalar>& traj, Scalar t) {
    return populations(traj, sample_index(traj, t))(traj.basis.spin2());
}

template <typename Scalar>
PopulationPartition<Scalar> population_partition(const StateTrajectory<Scalar>& traj, Scalar t) {
    return partition_at(traj, sample_index(traj, t));
}

// F = F2 at the end of the window.
template <typename Scalar>
Scalar transfer_fidelity(const StateTrajectory<Scalar>& traj) {
    return fidelity_target(traj, traj.times.back());
}

}  // namespace stirap
