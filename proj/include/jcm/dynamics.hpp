// dynamics.hpp — Time evolution under the full and effective Hamiltonians and
// the closed-form effective dynamics (coefficient functions and photon-number
// expectations for Fock and coherent inputs).

#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "jcm/core.hpp"
#include "jcm/effective.hpp"
#include "jcm/hilbert.hpp"
#include "jcm/linalg.hpp"
#include "jcm/model.hpp"

namespace jcm {

// ------------------------------- propagator -----------------------------------

// U(t) = exp(-i H t) from a single Hermitian eigendecomposition, reused across
// all requested times.
class Propagator {
public:
    explicit Propagator(const OperatorMatrix& h, double hermiticity_tol = 1e-10)
        : es_((check_hermitian(h, hermiticity_tol), h.mat)) {}

    Matrix at(double t) const { return es_.unitary(-t); }

    // psi(t) for a fixed initial state, O(dim^2) per time.
    Vector evolve(const Vector& psi0, double t) const {
        const Eigen::Index n = es_.eigenvalues.size();
        Vector coeffs = es_.eigenvectors.adjoint() * psi0;
        for (Eigen::Index k = 0; k < n; ++k)
            coeffs(k) *= std::exp(-kImag * (es_.eigenvalues(k) * t));
        return es_.eigenvectors * coeffs;
    }

private:
    static void check_hermitian(const OperatorMatrix& h, double tol) {
        const double viol = h.hermiticity_violation();
        if (viol > tol * (1.0 + max_abs(h.mat)))
            throw std::domain_error("Propagator: generator is not Hermitian (violation " +
                                    std::to_string(viol) + ")");
    }

    HermitianEigensystem es_;
};

inline OperatorMatrix propagator(const OperatorMatrix& h, double t) {
    return {Propagator(h).at(t), false};
}

// ------------------------------- time series ----------------------------------

enum class Backend { full, effective_numeric, closed_form };

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::full: return "full";
        case Backend::effective_numeric: return "effective_numeric";
        case Backend::closed_form: return "closed_form";
    }
    return "?";
}

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> na;
    std::vector<double> nb;
    Backend backend{Backend::closed_form};
};

inline std::vector<double> uniform_grid(double t_max, int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    if (!(t_max > 0.0)) throw std::invalid_argument("uniform_grid: t_max must be > 0");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = t_max * i / double(points - 1);
    return g;
}

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("time grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

// <n_a(t)>, <n_b(t)> under the given Hermitian generator. The photon-number
// operators are diagonal in the fixed basis, so expectations are O(dim) per
// sample once the state is propagated.
inline TimeSeries evolve_expectations(const HilbertSpace& space, const OperatorMatrix& h,
                                      const StateVector& psi0, const std::vector<double>& grid,
                                      Backend tag = Backend::full) {
    check_grid(grid);
    if (h.dim() != space.dim() || psi0.dim() != space.dim())
        throw std::invalid_argument("evolve_expectations: dimension mismatch");
    const Eigen::VectorXd na_diag = number_diagonal_a(space);
    const Eigen::VectorXd nb_diag = number_diagonal_b(space);
    const Propagator prop(h);
    TimeSeries ts;
    ts.backend = tag;
    ts.times = grid;
    ts.na.reserve(grid.size());
    ts.nb.reserve(grid.size());
    for (double t : grid) {
        const Vector psi = prop.evolve(psi0.amplitudes, t);
        const Eigen::VectorXd prob = psi.cwiseAbs2();
        ts.na.push_back(na_diag.dot(prob));
        ts.nb.push_back(nb_diag.dot(prob));
    }
    return ts;
}

// --------------------------- closed-form coefficients --------------------------

// Heisenberg-picture mixing coefficients for a fixed branch:
//   a(t) = f1(t) a + f2(t) b,   b(t) = g2(t) a + g1(t) b,
// with f1 = cos^2 e^{-i Omega_A t} + sin^2 e^{-i Omega_B t},
//      f2 = cos sin (e^{-i Omega_A t} - e^{-i Omega_B t}),
//      g1 = sin^2 e^{-i Omega_A t} + cos^2 e^{-i Omega_B t},  g2 = f2.
struct CoefficientSet {
    double theta{0.0};
    double omega_A{0.0};
    double omega_B{0.0};

    Complex f1(double t) const {
        const double c2 = std::cos(theta) * std::cos(theta);
        return c2 * phase_A(t) + (1.0 - c2) * phase_B(t);
    }
    Complex f2(double t) const {
        return std::cos(theta) * std::sin(theta) * (phase_A(t) - phase_B(t));
    }
    Complex g1(double t) const {
        const double s2 = std::sin(theta) * std::sin(theta);
        return s2 * phase_A(t) + (1.0 - s2) * phase_B(t);
    }
    Complex g2(double t) const { return f2(t); }

private:
    Complex phase_A(double t) const { return std::exp(-kImag * (omega_A * t)); }
    Complex phase_B(double t) const { return std::exp(-kImag * (omega_B * t)); }
};

inline CoefficientSet coefficients(const BranchParams& bp) {
    return {bp.theta, bp.omega_A, bp.omega_B};
}

// <n_a(t)> = n |f1|^2 + m |f2|^2, <n_b(t)> = m |g1|^2 + n |g2|^2 for the Fock
// input |n, m> on the branch.
inline TimeSeries closed_form_fock(const BranchParams& bp, int n, int m,
                                   const std::vector<double>& grid) {
    if (n < 0 || m < 0) throw std::invalid_argument("closed_form_fock: n, m must be >= 0");
    check_grid(grid);
    const CoefficientSet cs = coefficients(bp);
    TimeSeries ts;
    ts.backend = Backend::closed_form;
    ts.times = grid;
    ts.na.reserve(grid.size());
    ts.nb.reserve(grid.size());
    for (double t : grid) {
        const double w1 = std::norm(cs.f1(t));
        const double w2 = std::norm(cs.f2(t));
        ts.na.push_back(n * w1 + m * w2);
        ts.nb.push_back(m * std::norm(cs.g1(t)) + n * std::norm(cs.g2(t)));
    }
    return ts;
}

// Coherent input |alpha, beta>: intensity mixing plus the phase-sensitive
// interference terms.
inline TimeSeries closed_form_coherent(const BranchParams& bp, Complex alpha, Complex beta,
                                       const std::vector<double>& grid) {
    check_grid(grid);
    const CoefficientSet cs = coefficients(bp);
    const double ia = std::norm(alpha);
    const double ib = std::norm(beta);
    TimeSeries ts;
    ts.backend = Backend::closed_form;
    ts.times = grid;
    ts.na.reserve(grid.size());
    ts.nb.reserve(grid.size());
    for (double t : grid) {
        const Complex f1 = cs.f1(t), f2 = cs.f2(t);
        const Complex g1 = cs.g1(t), g2 = cs.g2(t);
        ts.na.push_back(ia * std::norm(f1) + ib * std::norm(f2) +
                        2.0 * std::real(alpha * std::conj(beta) * f1 * std::conj(f2)));
        ts.nb.push_back(ib * std::norm(g1) + ia * std::norm(g2) +
                        2.0 * std::real(beta * std::conj(alpha) * g1 * std::conj(g2)));
    }
    return ts;
}

// --------------------------- backend comparison -------------------------------

struct FockSpec {
    int n_a{0};
    int n_b{0};
};

struct CoherentSpec {
    Complex alpha{0.0};
    Complex beta{0.0};
};

// Initial state for a comparison run. The atom is an energy eigenstate by
// construction; superpositions are unrepresentable here.
struct InitialState {
    std::variant<FockSpec, CoherentSpec> field;
    AtomicLevel atom{AtomicLevel::plus};

    bool is_fock() const noexcept { return std::holds_alternative<FockSpec>(field); }
    const FockSpec& fock() const { return std::get<FockSpec>(field); }
    const CoherentSpec& coherent() const { return std::get<CoherentSpec>(field); }

    StateVector build(const HilbertSpace& space) const {
        if (is_fock()) return fock_state(space, fock().n_a, fock().n_b, atom);
        return coherent_state(space, coherent().alpha, coherent().beta, atom);
    }

    int branch_sign() const noexcept { return atom == AtomicLevel::plus ? +1 : -1; }
};

struct ComparisonResult {
    TimeSeries full;
    TimeSeries effective_numeric;
    TimeSeries closed_form;
    BranchParams branch;
    double max_abs_deviation_na{0.0}; // full vs closed form
    double rms_deviation_na{0.0};
};

// Runs all three backends on the same grid. The original-frame initial state is
// evolved under both generators without the SW frame dressing, so an O(eps)
// observable offset between full and effective series is expected.
inline ComparisonResult compare_full_vs_effective(const ModelParams& p, const InitialState& init,
                                                  const std::vector<double>& grid) {
    check_grid(grid);
    const HilbertSpace space = p.space();
    const StateVector psi0 = init.build(space);

    ComparisonResult out;
    out.branch = branch_params(p, init.branch_sign());
    out.full = evolve_expectations(space, build_full(p, space), psi0, grid, Backend::full);
    out.effective_numeric =
        evolve_expectations(space, build_heff(p, space), psi0, grid, Backend::effective_numeric);
    if (init.is_fock())
        out.closed_form = closed_form_fock(out.branch, init.fock().n_a, init.fock().n_b, grid);
    else
        out.closed_form =
            closed_form_coherent(out.branch, init.coherent().alpha, init.coherent().beta, grid);

    double sumsq = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dev = std::abs(out.full.na[i] - out.closed_form.na[i]);
        out.max_abs_deviation_na = std::max(out.max_abs_deviation_na, dev);
        sumsq += dev * dev;
    }
    out.rms_deviation_na = std::sqrt(sumsq / double(grid.size()));
    return out;
}

} // namespace jcm
