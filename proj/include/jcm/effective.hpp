// effective.hpp — First-order effective Hamiltonian, per-branch reduction to a
// two-mode quadratic form, and its diagonalization by a beam-splitter rotation.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jcm/core.hpp"
#include "jcm/hilbert.hpp"
#include "jcm/linalg.hpp"
#include "jcm/model.hpp"
#include "jcm/parallel.hpp"

namespace jcm {

// --------------------------- effective Hamiltonian ----------------------------

// H_eff = omega_a a†a + omega_b b†b + Omega0 sigma_z
//       + chi_a a†a sigma_z + chi_b b†b sigma_z + J (a†b + ab†) sigma_z.
// Block diagonal in the atomic sector; no exchange terms remain.
inline OperatorMatrix build_heff(const ModelParams& p, const HilbertSpace& space) {
    const DerivedQuantities d = derive(p);
    const double mz = p.mz();
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        const double zval = (s.atom == AtomicLevel::plus) ? mz : -mz;
        m(i, i) = p.omega_a * s.n_a + p.omega_b * s.n_b + p.Omega0 * zval +
                  zval * (d.chi_a * s.n_a + d.chi_b * s.n_b);
        // beam-splitter term: a†b moves one photon from b to a
        if (s.n_b > 0 && s.n_a + 1 <= space.cutoff_a())
            m(space.index(s.n_a + 1, s.n_b - 1, s.atom), i) =
                zval * d.j_coupling * std::sqrt(double(s.n_b) * (s.n_a + 1));
        if (s.n_a > 0 && s.n_b + 1 <= space.cutoff_b())
            m(space.index(s.n_a - 1, s.n_b + 1, s.atom), i) =
                zval * d.j_coupling * std::sqrt(double(s.n_a) * (s.n_b + 1));
    }
    return {std::move(m), true};
}

// ------------------------------ branch reduction ------------------------------

// The effective Hamiltonian restricted to atomic branch s = ±1, as scalar
// parameters: shifted frequencies and the branch beam-splitter coefficient.
// The sigma_z magnitude m_z is carried explicitly so both conventions stay
// consistent end to end.
struct BranchHamiltonian {
    int s{+1};
    double omega_a_tilde{0.0}; // omega_a + s m_z chi_a
    double omega_b_tilde{0.0}; // omega_b + s m_z chi_b
    double j_eff{0.0};         // s m_z J
};

inline BranchHamiltonian branch_reduce(const ModelParams& p, int s) {
    if (s != +1 && s != -1) throw std::invalid_argument("branch_reduce: s must be +1 or -1");
    const DerivedQuantities d = derive(p);
    const double mz = p.mz();
    BranchHamiltonian b;
    b.s = s;
    b.omega_a_tilde = p.omega_a + s * mz * d.chi_a;
    b.omega_b_tilde = p.omega_b + s * mz * d.chi_b;
    b.j_eff = s * mz * d.j_coupling;
    return b;
}

// Rotation angle diagonalizing [[w_a, j], [j, w_b]]; theta in (-pi/2, pi/2].
// Without a mixing term there is nothing to rotate, so j = 0 pins theta = 0
// for either ordering of the frequencies (and at the double degeneracy).
inline double rotation_angle(const BranchHamiltonian& b) {
    if (b.j_eff == 0.0) return 0.0;
    return 0.5 * std::atan2(2.0 * b.j_eff, b.omega_a_tilde - b.omega_b_tilde);
}

// Normal-mode frequencies, ordered Omega_A >= Omega_B.
inline std::pair<double, double> normal_modes(const BranchHamiltonian& b) {
    const double mean = 0.5 * (b.omega_a_tilde + b.omega_b_tilde);
    const double diff = b.omega_a_tilde - b.omega_b_tilde;
    const double split = 0.5 * std::hypot(diff, 2.0 * b.j_eff);
    return {mean + split, mean - split};
}

// Branch-level solution: angle, normal modes, and the slow time scale
// tau_eff = 1/|Omega_A - Omega_B| (infinite at degeneracy).
struct BranchParams {
    BranchHamiltonian branch;
    double theta{0.0};
    double omega_A{0.0};
    double omega_B{0.0};
    double tau_eff{std::numeric_limits<double>::infinity()};

    bool degenerate() const noexcept { return !std::isfinite(tau_eff); }
};

inline BranchParams make_branch_params(const BranchHamiltonian& b) {
    BranchParams bp;
    bp.branch = b;
    bp.theta = rotation_angle(b);
    std::tie(bp.omega_A, bp.omega_B) = normal_modes(b);
    const double gap = bp.omega_A - bp.omega_B;
    bp.tau_eff = (gap == 0.0) ? std::numeric_limits<double>::infinity() : 1.0 / gap;
    return bp;
}

inline BranchParams branch_params(const ModelParams& p, int s) {
    return make_branch_params(branch_reduce(p, s));
}

// ----------------------------- rotation operator ------------------------------

// R(theta) = exp[theta (a†b - a b†)], built block by block along the conserved
// total photon number, so [R, a†a + b†b] = 0 holds with exact zeros.
inline OperatorMatrix rotation_operator(const HilbertSpace& space, double theta) {
    Matrix t = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        if (s.n_b > 0 && s.n_a + 1 <= space.cutoff_a())
            t(space.index(s.n_a + 1, s.n_b - 1, s.atom), i) +=
                std::sqrt(double(s.n_b) * (s.n_a + 1));
        if (s.n_a > 0 && s.n_b + 1 <= space.cutoff_b())
            t(space.index(s.n_a - 1, s.n_b + 1, s.atom), i) -=
                std::sqrt(double(s.n_a) * (s.n_b + 1));
    }
    Matrix r = expm_antihermitian_blocked(t, photon_blocks(space), theta);
    return {std::move(r), false};
}

// ------------------------- diagonalization residual ---------------------------

// Entries of the one-photon-hop pattern (a†b + ab†) within atomic sector s,
// restricted to complete total-photon blocks (n_a + n_b <= min cutoff), where
// the truncated rotation is the exact su(2) rotation.
inline double hop_pattern_norm(const Matrix& m, const HilbertSpace& space, int s) {
    const AtomicLevel atom = (s == +1) ? AtomicLevel::plus : AtomicLevel::minus;
    const int nmax = std::min(space.cutoff_a(), space.cutoff_b());
    double sumsq = 0.0;
    for (int col = 0; col < space.dim(); ++col) {
        const BasisState sc = space.basis_state(col);
        if (sc.atom != atom || space.photons(sc) > nmax) continue;
        if (sc.n_b > 0 && sc.n_a + 1 <= space.cutoff_a())
            sumsq += std::norm(m(space.index(sc.n_a + 1, sc.n_b - 1, atom), col));
        if (sc.n_a > 0 && sc.n_b + 1 <= space.cutoff_b())
            sumsq += std::norm(m(space.index(sc.n_a - 1, sc.n_b + 1, atom), col));
    }
    return std::sqrt(sumsq);
}

// Conjugates the effective Hamiltonian with the branch rotation and returns the
// norm of the surviving hop-pattern entries in that branch. With theta given by
// rotation_angle this vanishes to solver precision.
inline double verify_diagonal(const ModelParams& p, int s, const HilbertSpace& space) {
    const OperatorMatrix heff = build_heff(p, space);
    const BranchParams bp = branch_params(p, s);
    const OperatorMatrix r = rotation_operator(space, bp.theta);
    const Matrix rotated = r.mat * heff.mat * r.mat.adjoint();
    return hop_pattern_norm(rotated, space, s);
}

// -------------------------------- theta sweep ---------------------------------

enum class SweepParameter { omega_a, omega_b, g_a, g_b, Omega0 };

inline const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::omega_a: return "omega_a";
        case SweepParameter::omega_b: return "omega_b";
        case SweepParameter::g_a: return "g_a";
        case SweepParameter::g_b: return "g_b";
        case SweepParameter::Omega0: return "Omega0";
    }
    return "?";
}

inline ModelParams with_sweep_value(ModelParams p, SweepParameter which, double value) {
    switch (which) {
        case SweepParameter::omega_a: p.omega_a = value; break;
        case SweepParameter::omega_b: p.omega_b = value; break;
        case SweepParameter::g_a: p.g_a = value; break;
        case SweepParameter::g_b: p.g_b = value; break;
        case SweepParameter::Omega0: p.Omega0 = value; break;
    }
    return p;
}

// One grid point of a sweep. asymptote_flag: 0 none, 1 brackets a branch
// degeneracy (the shifted-frequency difference changes sign away from any
// resonance), 2 the row itself sits on a resonance and has no dispersive data.
struct ThetaSweepRow {
    double value{0.0};
    bool resonant{false};
    double theta_plus{0.0};
    double theta_minus{0.0};
    double omega_A_plus{0.0};
    double omega_B_plus{0.0};
    double omega_A_minus{0.0};
    double omega_B_minus{0.0};
    double diff_plus{0.0};  // omega_a_tilde - omega_b_tilde, branch +
    double diff_minus{0.0};
    double delta_a{0.0};
    double delta_b{0.0};
    int asymptote_flag{0};
};

inline std::vector<ThetaSweepRow> theta_sweep(const ModelParams& base, SweepParameter which,
                                              const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("theta_sweep: grid must be strictly increasing");

    std::vector<ThetaSweepRow> rows(grid.size());
    parallel_for_indexed(grid.size(), [&](std::size_t i) {
        ThetaSweepRow& row = rows[i];
        row.value = grid[i];
        const ModelParams p = with_sweep_value(base, which, grid[i]);
        row.delta_a = p.detuning_a();
        row.delta_b = p.detuning_b();
        try {
            const BranchParams plus = branch_params(p, +1);
            const BranchParams minus = branch_params(p, -1);
            row.theta_plus = plus.theta;
            row.theta_minus = minus.theta;
            row.omega_A_plus = plus.omega_A;
            row.omega_B_plus = plus.omega_B;
            row.omega_A_minus = minus.omega_A;
            row.omega_B_minus = minus.omega_B;
            row.diff_plus = plus.branch.omega_a_tilde - plus.branch.omega_b_tilde;
            row.diff_minus = minus.branch.omega_a_tilde - minus.branch.omega_b_tilde;
        } catch (const resonance_error&) {
            row.resonant = true;
            row.asymptote_flag = 2;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.theta_plus = row.theta_minus = nan;
            row.omega_A_plus = row.omega_B_plus = nan;
            row.omega_A_minus = row.omega_B_minus = nan;
            row.diff_plus = row.diff_minus = nan;
        }
    });

    // Flag intervals where a branch's shifted-frequency difference changes sign.
    // A sign change across a resonance crossing is an artifact of the diverging
    // dispersive shift, not a mode degeneracy, and is not flagged.
    auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const ThetaSweepRow& lo = rows[i];
        const ThetaSweepRow& hi = rows[i + 1];
        if (lo.resonant || hi.resonant) continue;
        if (sgn(lo.delta_a) != sgn(hi.delta_a) || sgn(lo.delta_b) != sgn(hi.delta_b)) continue;
        const bool plus_crossing = lo.diff_plus * hi.diff_plus < 0.0 ||
                                   lo.diff_plus == 0.0 || hi.diff_plus == 0.0;
        const bool minus_crossing = lo.diff_minus * hi.diff_minus < 0.0 ||
                                    lo.diff_minus == 0.0 || hi.diff_minus == 0.0;
        if (plus_crossing || minus_crossing) {
            if (rows[i].asymptote_flag == 0) rows[i].asymptote_flag = 1;
            if (rows[i + 1].asymptote_flag == 0) rows[i + 1].asymptote_flag = 1;
        }
    }
    return rows;
}

} // namespace jcm
