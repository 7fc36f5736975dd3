#pragma once

// Discretized model: two spins, two bosonic modes and a linearly discretized
// bosonic continuum, restricted to the single-excitation sector.
//
// Basis order (fixed; every matrix and output column follows it):
//
//   0        Spin1       spin 1 excited
//   1        ModeA1      mode a1 holds the excitation
//   2..N+1   Bath(1..N)  bath oscillator j at frequency j*delta
//   N+2      ModeA2
//   N+3      Spin2
//   N+4      Vacuum      only present in density-matrix propagation
//
// Energies are stored shifted by the constant +Delta: (Delta, Delta, w_j, Delta, Delta).

#include "stirap/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stirap {

template <typename Scalar = double>
struct SpectralDensity {
    Scalar amplitude{10};  // g
    Scalar exponent{1.5};  // eta
    Scalar cutoff{2};      // omega_c

    bool operator==(const SpectralDensity&) const = default;
};

// Gaussian pump/Stokes envelopes, all in absolute time units.
template <typename Scalar = double>
struct PulsePair {
    Scalar peak{2};   // Omega
    Scalar width{2};  // T
    Scalar delay{2};  // tau

    bool operator==(const PulsePair&) const = default;
};

template <typename Scalar = double>
struct PulseValues {
    Scalar pump;
    Scalar stokes;
};

// Coupling on the Spin1-ModeA1 link and on the ModeA2-Spin2 link.
template <typename Scalar = double>
struct LinkValues {
    Scalar side1;
    Scalar side2;
};

// How ModelParams::pulses.delay is measured.
enum class DelayUnit { PulseWidth, Absolute };

// Which spin/mode link carries the pump pulse. Mirrored swaps the two pulse
// roles, used to state the 1 <-> 2 relabeling symmetry.
enum class PulseRouting { PumpOnSpin1, PumpOnSpin2 };

template <typename Scalar = double>
struct ModelParams {
    Scalar detuning{0};  // Delta, shared by both spins and both modes
    SpectralDensity<Scalar> spectral1{};
    SpectralDensity<Scalar> spectral2{};
    PulsePair<Scalar> pulses{2, 2, 1};
    DelayUnit delay_unit{DelayUnit::PulseWidth};
    PulseRouting routing{PulseRouting::PumpOnSpin1};
    Scalar loss_rate{0};  // gamma
    Scalar step{0.01};    // delta

    bool operator==(const ModelParams&) const = default;
};

template <typename Scalar>
void validate(const SpectralDensity<Scalar>& sd, const std::string& field) {
    if (!(sd.amplitude >= 0)) throw ConfigError(field + ".g", "must be >= 0");
    if (!(sd.exponent > 0)) throw ConfigError(field + ".eta", "must be > 0");
    if (!(sd.cutoff > 0)) throw ConfigError(field + ".omega_c", "must be > 0");
}

template <typename Scalar>
void validate(const PulsePair<Scalar>& p) {
    if (!(p.peak >= 0)) throw ConfigError("Omega", "must be >= 0");
    if (!(p.width > 0)) throw ConfigError("T", "must be > 0");
    if (!(p.delay >= 0)) throw ConfigError("tau", "must be >= 0");
}

// J(w) = g w^eta on (0, omega_c], zero above the cutoff.
template <typename Scalar>
Scalar eval_spectral_density(const SpectralDensity<Scalar>& sd, Scalar omega) {
    using std::pow;
    if (!(omega > 0)) throw std::domain_error("spectral density is defined for omega > 0 only");
    if (omega > sd.cutoff) return Scalar(0);
    return sd.amplitude * pow(omega, sd.exponent);
}

template <typename Scalar>
PulseValues<Scalar> eval_pulses(const PulsePair<Scalar>& p, Scalar t) {
    using std::exp;
    const Scalar half = p.delay / 2;
    const Scalar w2 = p.width * p.width;
    return {p.peak * exp(-(t - half) * (t - half) / w2), p.peak * exp(-(t + half) * (t + half) / w2)};
}

// Pulse envelopes of a parameter set with the delay converted to absolute time.
template <typename Scalar>
PulsePair<Scalar> absolute_pulses(const ModelParams<Scalar>& params) {
    PulsePair<Scalar> p = params.pulses;
    if (params.delay_unit == DelayUnit::PulseWidth) p.delay *= p.width;
    return p;
}

// N = omega_c / delta, required to be a positive integer.
template <typename Scalar>
Index bath_mode_count(Scalar cutoff, Scalar step) {
    using std::abs;
    using std::round;
    if (!(step > 0)) throw ConfigError("delta", "must be > 0");
    const Scalar ratio = cutoff / step;
    const Scalar n = round(ratio);
    if (n < 1 || abs(ratio - n) > Scalar(1e-9) * n) {
        throw ConfigError("delta", "omega_c/delta = " + std::to_string(static_cast<double>(ratio)) +
                                       " is not a positive integer");
    }
    return static_cast<Index>(n);
}

template <typename Scalar>
void validate(const ModelParams<Scalar>& params) {
    validate(params.spectral1, "spectral1");
    validate(params.spectral2, "spectral2");
    if (params.spectral1.cutoff != params.spectral2.cutoff) {
        throw ConfigError("omega_c", "both spectral densities must share one cutoff");
    }
    validate(params.pulses);
    if (!(params.loss_rate >= 0)) throw ConfigError("gamma", "must be >= 0");
    if (!std::isfinite(static_cast<double>(params.detuning))) throw ConfigError("Delta", "must be finite");
    bath_mode_count(params.spectral1.cutoff, params.step);
}

template <typename Scalar = double>
class Basis {
public:
    Basis(Index modes, Scalar step) : modes_(modes), step_(step) {}

    Index bath_modes() const { return modes_; }
    Scalar step() const { return step_; }

    // Single-excitation dimension M = N + 4.
    Index dim() const { return modes_ + 4; }

    static constexpr Index spin1() { return 0; }
    static constexpr Index mode_a1() { return 1; }
    Index bath(Index j) const { return 1 + j; }  // j in 1..N
    Index mode_a2() const { return modes_ + 2; }
    Index spin2() const { return modes_ + 3; }
    Index vacuum() const { return modes_ + 4; }

    Index first_bath() const { return 2; }
    bool is_bath(Index i) const { return i >= 2 && i <= modes_ + 1; }

    Scalar frequency(Index j) const { return static_cast<Scalar>(j) * step_; }

    std::string label(Index i) const {
        if (i == spin1()) return "Spin1";
        if (i == mode_a1()) return "ModeA1";
        if (is_bath(i)) return "Bath(" + std::to_string(i - 1) + ")";
        if (i == mode_a2()) return "ModeA2";
        if (i == spin2()) return "Spin2";
        if (i == vacuum()) return "Vacuum";
        throw std::out_of_range("basis index " + std::to_string(i));
    }

    bool operator==(const Basis&) const = default;

private:
    Index modes_;
    Scalar step_;
};

template <typename Scalar>
Basis<Scalar> build_basis(const ModelParams<Scalar>& params) {
    validate(params);
    return Basis<Scalar>(bath_mode_count(params.spectral1.cutoff, params.step), params.step);
}

// Time-independent skeleton plus the two pulse-modulated links.
template <typename Scalar = double>
struct HamiltonianSystem {
    Basis<Scalar> basis;
    Matrix<Scalar> static_part;  // real symmetric M x M
    Vector<Scalar> coupling1;    // g_{1,j}, j = 1..N
    Vector<Scalar> coupling2;    // g_{2,j}
    Vector<Scalar> loss;         // amplitude decay rate per basis state
    PulsePair<Scalar> pulses;    // absolute time
    PulseRouting routing{PulseRouting::PumpOnSpin1};

    Index dim() const { return basis.dim(); }

    // Coefficients on the Spin1-ModeA1 and ModeA2-Spin2 links at time t.
    LinkValues<Scalar> links_at(Scalar t) const {
        const auto v = eval_pulses(pulses, t);
        if (routing == PulseRouting::PumpOnSpin1) return {v.pump, v.stokes};
        return {v.stokes, v.pump};
    }
};

template <typename Scalar>
HamiltonianSystem<Scalar> build_hamiltonian(const ModelParams<Scalar>& params) {
    using std::sqrt;
    auto basis = build_basis(params);
    const Index n = basis.bath_modes();
    const Index m = basis.dim();

    HamiltonianSystem<Scalar> sys{basis,
                                  Matrix<Scalar>::Zero(m, m),
                                  Vector<Scalar>(n),
                                  Vector<Scalar>(n),
                                  Vector<Scalar>::Zero(m),
                                  absolute_pulses(params),
                                  params.routing};

    auto& h = sys.static_part;
    h(basis.spin1(), basis.spin1()) = params.detuning;
    h(basis.mode_a1(), basis.mode_a1()) = params.detuning;
    h(basis.mode_a2(), basis.mode_a2()) = params.detuning;
    h(basis.spin2(), basis.spin2()) = params.detuning;

    for (Index j = 1; j <= n; ++j) {
        // N*delta may round one ulp past the cutoff; the top grid point is inside by construction.
        const Scalar w = std::min(basis.frequency(j), params.spectral1.cutoff);
        const Index b = basis.bath(j);
        const Scalar g1 = sqrt(eval_spectral_density(params.spectral1, w) * basis.step());
        const Scalar g2 = sqrt(eval_spectral_density(params.spectral2, w) * basis.step());
        sys.coupling1(j - 1) = g1;
        sys.coupling2(j - 1) = g2;
        h(b, b) = w;
        h(basis.mode_a1(), b) = h(b, basis.mode_a1()) = g1;
        h(basis.mode_a2(), b) = h(b, basis.mode_a2()) = g2;
        sys.loss(b) = params.loss_rate;
    }
    return sys;
}

// H(t) as a dense complex matrix; real symmetric, hence exactly Hermitian.
template <typename Scalar>
ComplexMatrix<Scalar> hamiltonian_at(const HamiltonianSystem<Scalar>& sys, Scalar t) {
    ComplexMatrix<Scalar> h = sys.static_part.template cast<std::complex<Scalar>>();
    const auto links = sys.links_at(t);
    const auto& b = sys.basis;
    h(b.spin1(), b.mode_a1()) = h(b.mode_a1(), b.spin1()) = links.side1;
    h(b.mode_a2(), b.spin2()) = h(b.spin2(), b.mode_a2()) = links.side2;
    return h;
}

}  // namespace stirap
