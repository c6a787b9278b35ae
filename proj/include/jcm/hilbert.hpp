// hilbert.hpp — Truncated two-mode ⊗ two-level Hilbert space: basis indexing,
// ladder and atomic operators, Fock and coherent state constructors.

#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "jcm/core.hpp"

namespace jcm {

// ------------------------------- basis ---------------------------------------

struct BasisState {
    int n_a{0};
    int n_b{0};
    AtomicLevel atom{AtomicLevel::minus};
};

// Truncated product space. Photon numbers run 0..cutoff per mode (inclusive),
// the atom contributes a factor of two. Basis ordering is fixed so that dumps
// are comparable across implementations: the atom index varies fastest, then
// n_b, then n_a:
//   index = atom + 2*(n_b + (cutoff_b+1)*n_a)
class HilbertSpace {
public:
    HilbertSpace(int cutoff_a, int cutoff_b)
        : cutoff_a_(cutoff_a), cutoff_b_(cutoff_b),
          dim_(2 * (cutoff_a + 1) * (cutoff_b + 1)) {}

    int cutoff_a() const noexcept { return cutoff_a_; }
    int cutoff_b() const noexcept { return cutoff_b_; }
    int levels_a() const noexcept { return cutoff_a_ + 1; }
    int levels_b() const noexcept { return cutoff_b_ + 1; }
    int dim() const noexcept { return dim_; }

    int index(int n_a, int n_b, AtomicLevel atom) const noexcept {
        return static_cast<int>(atom) + 2 * (n_b + levels_b() * n_a);
    }
    int index(const BasisState& s) const noexcept { return index(s.n_a, s.n_b, s.atom); }

    BasisState basis_state(int i) const noexcept {
        BasisState s;
        s.atom = static_cast<AtomicLevel>(i & 1);
        const int field = i >> 1;
        s.n_b = field % levels_b();
        s.n_a = field / levels_b();
        return s;
    }

    bool contains(int n_a, int n_b) const noexcept {
        return n_a >= 0 && n_a <= cutoff_a_ && n_b >= 0 && n_b <= cutoff_b_;
    }

    // Safe interior: excludes the highest retained photon index per mode, where
    // ladder algebra is broken by truncation.
    bool interior(const BasisState& s) const noexcept {
        return s.n_a < cutoff_a_ && s.n_b < cutoff_b_;
    }

    // Total excitation number n_a + n_b + [atom = plus]; exactly conserved by
    // the full model even after truncation.
    int excitation(const BasisState& s) const noexcept {
        return s.n_a + s.n_b + (s.atom == AtomicLevel::plus ? 1 : 0);
    }

    // Total photon number n_a + n_b (conserved by beam-splitter mixing).
    int photons(const BasisState& s) const noexcept { return s.n_a + s.n_b; }

private:
    int cutoff_a_;
    int cutoff_b_;
    int dim_;
};

// Default budget for a single dense complex matrix: 2 GiB.
inline constexpr std::uint64_t kDefaultMatrixBudgetBytes = std::uint64_t{2} << 30;

inline HilbertSpace make_space(int cutoff_a, int cutoff_b,
                               std::uint64_t budget_bytes = kDefaultMatrixBudgetBytes) {
    if (cutoff_a < 0 || cutoff_b < 0)
        throw std::invalid_argument("make_space: cutoffs must be >= 0");
    const std::uint64_t dim =
        2ull * (static_cast<std::uint64_t>(cutoff_a) + 1) * (static_cast<std::uint64_t>(cutoff_b) + 1);
    if (dim * dim > budget_bytes / sizeof(Complex)) {
        std::ostringstream msg;
        msg << "make_space: dim " << dim << " needs " << (dim * dim * sizeof(Complex))
            << " bytes per matrix, over the " << budget_bytes << " byte budget";
        throw capacity_error(msg.str());
    }
    return HilbertSpace(cutoff_a, cutoff_b);
}

// ------------------------------ operators ------------------------------------

// Dense operator with Hermiticity metadata. hermitian_hint is a promise made by
// the constructor of the matrix, not a recomputed property.
struct OperatorMatrix {
    Matrix mat;
    bool hermitian_hint{false};

    Eigen::Index dim() const noexcept { return mat.rows(); }
    double hermiticity_violation() const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    }
};

// Annihilation operator of mode a: a|n_a> = sqrt(n_a)|n_a - 1>, identity on the
// rest. Matrix elements leading outside the truncation are dropped.
inline OperatorMatrix ladder_a(const HilbertSpace& space) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        if (s.n_a == 0) continue;
        m(space.index(s.n_a - 1, s.n_b, s.atom), i) = std::sqrt(double(s.n_a));
    }
    return {std::move(m), false};
}

inline OperatorMatrix ladder_b(const HilbertSpace& space) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        if (s.n_b == 0) continue;
        m(space.index(s.n_a, s.n_b - 1, s.atom), i) = std::sqrt(double(s.n_b));
    }
    return {std::move(m), false};
}

// Diagonal of the photon-number operator of mode a, as a real vector over the
// basis. Cheap form for expectation values.
inline Eigen::VectorXd number_diagonal_a(const HilbertSpace& space) {
    Eigen::VectorXd d(space.dim());
    for (int i = 0; i < space.dim(); ++i) d(i) = space.basis_state(i).n_a;
    return d;
}

inline Eigen::VectorXd number_diagonal_b(const HilbertSpace& space) {
    Eigen::VectorXd d(space.dim());
    for (int i = 0; i < space.dim(); ++i) d(i) = space.basis_state(i).n_b;
    return d;
}

struct AtomicOps {
    OperatorMatrix sigma_z;
    OperatorMatrix sigma_plus;
    OperatorMatrix sigma_minus;
};

// sigma_z with eigenvalues ±m_z (convention-dependent), sigma_+ = |+><-| ⊗ 1,
// sigma_- its adjoint. sigma_± carry no convention dependence.
inline AtomicOps atomic_ops(const HilbertSpace& space, SigmaConvention convention) {
    const double mz = sigma_z_magnitude(convention);
    Matrix z = Matrix::Zero(space.dim(), space.dim());
    Matrix p = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        z(i, i) = (s.atom == AtomicLevel::plus) ? mz : -mz;
        if (s.atom == AtomicLevel::minus)
            p(space.index(s.n_a, s.n_b, AtomicLevel::plus), i) = 1.0;
    }
    Matrix mnu = p.adjoint();
    return {{std::move(z), true}, {std::move(p), false}, {std::move(mnu), false}};
}

// Total excitation operator N = n_a + n_b + sigma_+ sigma_-; diagonal and
// independent of the sigma_z convention.
inline OperatorMatrix total_excitation(const HilbertSpace& space) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i)
        m(i, i) = double(space.excitation(space.basis_state(i)));
    return {std::move(m), true};
}

// ------------------------------ block structure ------------------------------

// Indices grouped by an exactly conserved integer label (total excitation,
// total photon number, ...). Used to exponentiate generators block by block so
// the conserved structure survives with exact zeros.
inline std::vector<std::vector<int>> partition_by_label(const HilbertSpace& space,
                                                        int (HilbertSpace::*label)(const BasisState&) const) {
    int max_label = 0;
    for (int i = 0; i < space.dim(); ++i)
        max_label = std::max(max_label, (space.*label)(space.basis_state(i)));
    std::vector<std::vector<int>> groups(max_label + 1);
    for (int i = 0; i < space.dim(); ++i)
        groups[(space.*label)(space.basis_state(i))].push_back(i);
    return groups;
}

inline std::vector<std::vector<int>> excitation_blocks(const HilbertSpace& space) {
    return partition_by_label(space, &HilbertSpace::excitation);
}

inline std::vector<std::vector<int>> photon_blocks(const HilbertSpace& space) {
    return partition_by_label(space, &HilbertSpace::photons);
}

// -------------------------------- states -------------------------------------

struct StateVector {
    Vector amplitudes;
    double norm_deficit{0.0}; // 1 - <psi|psi> before renormalization

    Eigen::Index dim() const noexcept { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

inline StateVector fock_state(const HilbertSpace& space, int n_a, int n_b, AtomicLevel atom) {
    if (!space.contains(n_a, n_b)) {
        std::ostringstream msg;
        msg << "fock_state: (" << n_a << ", " << n_b << ") outside cutoffs ("
            << space.cutoff_a() << ", " << space.cutoff_b() << ")";
        throw std::domain_error(msg.str());
    }
    Vector amps = Vector::Zero(space.dim());
    amps(space.index(n_a, n_b, atom)) = 1.0;
    return {std::move(amps), 0.0};
}

// Maximum tolerated truncation loss for coherent states. Over this, the cutoff
// is too small for the requested amplitude.
inline constexpr double kCoherentDeficitTolerance = 1e-5;

// Poissonian amplitudes p_k(alpha) = exp(-|alpha|^2/2) alpha^k / sqrt(k!),
// built by the stable recurrence p_k = p_{k-1} * alpha / sqrt(k).
inline std::vector<Complex> poisson_amplitudes(Complex alpha, int cutoff) {
    std::vector<Complex> p(cutoff + 1);
    p[0] = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k <= cutoff; ++k) p[k] = p[k - 1] * alpha / std::sqrt(double(k));
    return p;
}

// Smallest cutoff keeping the Poisson tail of |alpha|^2 below tol. Used for
// error messages when a requested amplitude does not fit.
inline int min_cutoff_for_amplitude(Complex alpha, double tol = kCoherentDeficitTolerance) {
    const double lambda = std::norm(alpha);
    double term = std::exp(-lambda);
    double cum = term;
    int k = 0;
    while (1.0 - cum > tol && k < 4096) {
        ++k;
        term *= lambda / k;
        cum += term;
    }
    return k;
}

// Product coherent state |alpha>_a |beta>_b |atom>, truncated at the cutoffs and
// renormalized; the pre-renormalization loss is recorded in norm_deficit.
inline StateVector coherent_state(const HilbertSpace& space, Complex alpha, Complex beta,
                                  AtomicLevel atom) {
    const std::vector<Complex> pa = poisson_amplitudes(alpha, space.cutoff_a());
    const std::vector<Complex> pb = poisson_amplitudes(beta, space.cutoff_b());
    Vector amps = Vector::Zero(space.dim());
    for (int n = 0; n <= space.cutoff_a(); ++n)
        for (int m = 0; m <= space.cutoff_b(); ++m)
            amps(space.index(n, m, atom)) = pa[n] * pb[m];
    const double sq = amps.squaredNorm();
    const double deficit = 1.0 - sq;
    if (deficit > kCoherentDeficitTolerance) {
        std::ostringstream msg;
        msg << "coherent_state: truncation loss " << deficit << " exceeds "
            << kCoherentDeficitTolerance << "; need cutoffs of at least ("
            << min_cutoff_for_amplitude(alpha) << ", " << min_cutoff_for_amplitude(beta)
            << ") for |alpha| = " << std::abs(alpha) << ", |beta| = " << std::abs(beta);
        throw truncation_error(msg.str());
    }
    amps /= std::sqrt(sq);
    return {std::move(amps), deficit};
}

} // namespace jcm
