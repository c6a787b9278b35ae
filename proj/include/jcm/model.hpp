// model.hpp — Model parameters, derived second-order quantities, dispersive-regime
// checks, and builders for H0, V_int, and the full two-mode JCM Hamiltonian.

#pragma once

#include <cmath>
#include <sstream>

#include "jcm/core.hpp"
#include "jcm/hilbert.hpp"

namespace jcm {

// ------------------------------- parameters ----------------------------------

// Microscopic parameters in hbar = 1 units; all frequencies angular.
struct ModelParams {
    double omega_a{1.0};
    double omega_b{1.1};
    double Omega0{5.0};
    double g_a{0.05};
    double g_b{0.05};
    int cutoff_a{12};
    int cutoff_b{12};
    SigmaConvention convention{SigmaConvention::half};

    double detuning_a() const noexcept { return Omega0 - omega_a; }
    double detuning_b() const noexcept { return Omega0 - omega_b; }
    double mz() const noexcept { return sigma_z_magnitude(convention); }

    void validate() const {
        if (!(omega_a > 0.0) || !(omega_b > 0.0) || !(Omega0 > 0.0))
            throw std::invalid_argument("ModelParams: frequencies must be positive");
        if (g_a < 0.0 || g_b < 0.0)
            throw std::invalid_argument("ModelParams: couplings must be >= 0");
        if (cutoff_a < 0 || cutoff_b < 0)
            throw std::invalid_argument("ModelParams: cutoffs must be >= 0");
    }

    HilbertSpace space() const { return make_space(cutoff_a, cutoff_b); }
};

// Every second-order scale of the dispersive construction.
struct DerivedQuantities {
    double delta_a{0.0};      // Omega0 - omega_a
    double delta_b{0.0};      // Omega0 - omega_b
    double inv_delta_ab{0.0}; // 1/delta_a + 1/delta_b
    double eps_a{0.0};        // g_a / delta_a
    double eps_b{0.0};        // g_b / delta_b
    double chi_a{0.0};        // 2 g_a^2 / delta_a
    double chi_b{0.0};        // 2 g_b^2 / delta_b
    double j_coupling{0.0};   // 2 g_a g_b (1/delta_a + 1/delta_b)

    double eps_max() const noexcept { return std::max(std::abs(eps_a), std::abs(eps_b)); }
};

inline DerivedQuantities derive(const ModelParams& p) {
    p.validate();
    DerivedQuantities d;
    d.delta_a = p.detuning_a();
    d.delta_b = p.detuning_b();
    if (d.delta_a == 0.0 && p.g_a != 0.0)
        throw resonance_error("derive: mode a resonant (Omega0 == omega_a) with g_a != 0");
    if (d.delta_b == 0.0 && p.g_b != 0.0)
        throw resonance_error("derive: mode b resonant (Omega0 == omega_b) with g_b != 0");
    d.inv_delta_ab = 1.0 / d.delta_a + 1.0 / d.delta_b;
    // Uncoupled modes contribute nothing even at zero detuning.
    d.eps_a = (p.g_a == 0.0) ? 0.0 : p.g_a / d.delta_a;
    d.eps_b = (p.g_b == 0.0) ? 0.0 : p.g_b / d.delta_b;
    d.chi_a = (p.g_a == 0.0) ? 0.0 : 2.0 * p.g_a * p.g_a / d.delta_a;
    d.chi_b = (p.g_b == 0.0) ? 0.0 : 2.0 * p.g_b * p.g_b / d.delta_b;
    d.j_coupling = (p.g_a * p.g_b == 0.0) ? 0.0 : 2.0 * p.g_a * p.g_b * d.inv_delta_ab;
    return d;
}

// --------------------------- dispersive validation ----------------------------

// Warn when g sqrt(<n>+1) / |Delta| exceeds this; first-order errors then leave
// the percent scale.
inline constexpr double kDispersiveWarnThreshold = 0.1;

struct DispersiveReport {
    double ratio_a{0.0};
    double ratio_b{0.0};
    bool pass_a{true};
    bool pass_b{true};

    bool pass() const noexcept { return pass_a && pass_b; }
};

inline DispersiveReport dispersive_check(const ModelParams& p, double mean_na, double mean_nb) {
    if (mean_na < 0.0 || mean_nb < 0.0)
        throw std::invalid_argument("dispersive_check: mean photon numbers must be >= 0");
    DispersiveReport r;
    r.ratio_a = (p.g_a == 0.0) ? 0.0
                               : p.g_a * std::sqrt(mean_na + 1.0) / std::abs(p.detuning_a());
    r.ratio_b = (p.g_b == 0.0) ? 0.0
                               : p.g_b * std::sqrt(mean_nb + 1.0) / std::abs(p.detuning_b());
    r.pass_a = r.ratio_a <= kDispersiveWarnThreshold;
    r.pass_b = r.ratio_b <= kDispersiveWarnThreshold;
    return r;
}

// ------------------------------ Hamiltonians ----------------------------------

// H0 = omega_a a†a + omega_b b†b + Omega0 sigma_z. Diagonal.
inline OperatorMatrix build_h0(const ModelParams& p, const HilbertSpace& space) {
    p.validate();
    const double mz = p.mz();
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        const double zval = (s.atom == AtomicLevel::plus) ? mz : -mz;
        m(i, i) = p.omega_a * s.n_a + p.omega_b * s.n_b + p.Omega0 * zval;
    }
    return {std::move(m), true};
}

// V = g_a (a† sigma_- + a sigma_+) + g_b (b† sigma_- + b sigma_+). Every nonzero
// entry connects states of equal total excitation.
inline OperatorMatrix build_v_int(const ModelParams& p, const HilbertSpace& space) {
    p.validate();
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        if (s.atom != AtomicLevel::plus) continue;
        // a† sigma_- : |n_a, n_b, +> -> sqrt(n_a+1) |n_a+1, n_b, ->
        if (s.n_a + 1 <= space.cutoff_a())
            m(space.index(s.n_a + 1, s.n_b, AtomicLevel::minus), i) =
                p.g_a * std::sqrt(double(s.n_a + 1));
        if (s.n_b + 1 <= space.cutoff_b())
            m(space.index(s.n_a, s.n_b + 1, AtomicLevel::minus), i) =
                p.g_b * std::sqrt(double(s.n_b + 1));
    }
    Matrix full = m + Matrix(m.adjoint());
    return {std::move(full), true};
}

// Full two-mode JCM Hamiltonian H0 + V. Valid at resonance too; only the
// dispersive construction needs nonzero detunings.
inline OperatorMatrix build_full(const ModelParams& p, const HilbertSpace& space) {
    OperatorMatrix h0 = build_h0(p, space);
    const OperatorMatrix v = build_v_int(p, space);
    h0.mat += v.mat;
    return {std::move(h0.mat), true};
}

// Rabi splitting of excitation manifold n: sqrt(Delta^2 + 4 g^2 (n+1)).
inline double rabi_splitting(int n, double delta, double g) {
    if (n < 0) throw std::invalid_argument("rabi_splitting: manifold index must be >= 0");
    return std::sqrt(delta * delta + 4.0 * g * g * (n + 1));
}

} // namespace jcm
