// linalg.hpp — Dense Hermitian eigendecomposition helpers: unitaries from
// anti-Hermitian generators (optionally block by block along a conserved label).

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "jcm/core.hpp"

namespace jcm {

// Eigendecomposition of a Hermitian matrix, kept around so many functions of
// the same matrix reuse a single factorization.
struct HermitianEigensystem {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    explicit HermitianEigensystem(const Matrix& h) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("HermitianEigensystem: eigendecomposition failed");
        eigenvalues = solver.eigenvalues();
        eigenvectors = solver.eigenvectors();
    }

    // exp(i c H) for real c.
    Matrix unitary(double c) const {
        const Eigen::Index n = eigenvalues.size();
        Vector phases(n);
        for (Eigen::Index k = 0; k < n; ++k)
            phases(k) = std::exp(kImag * (c * eigenvalues(k)));
        return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
    }
};

// exp(c G) for anti-Hermitian G, via the Hermitian eigendecomposition of iG.
inline Matrix expm_antihermitian(const Matrix& g, double c = 1.0) {
    if (c == 0.0) return Matrix::Identity(g.rows(), g.cols());
    const HermitianEigensystem es(Matrix(kImag * g));
    return es.unitary(-c);
}

// Same, but computed independently inside each index block. G must carry exact
// zeros between blocks (an exactly conserved label); the result then carries
// exact zeros there too instead of eigensolver roundoff.
inline Matrix expm_antihermitian_blocked(const Matrix& g,
                                         const std::vector<std::vector<int>>& blocks,
                                         double c = 1.0) {
    Matrix result = Matrix::Zero(g.rows(), g.cols());
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        const int n = static_cast<int>(block.size());
        Matrix sub(n, n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) sub(r, s) = g(block[r], block[s]);
        const Matrix esub = expm_antihermitian(sub, c);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) result(block[r], block[s]) = esub(r, s);
    }
    return result;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline double max_abs_commutator(const Matrix& a, const Matrix& b) {
    return max_abs(commutator(a, b));
}

inline double unitarity_defect(const Matrix& u) {
    return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

} // namespace jcm
