// schrieffer_wolff.hpp — Small-rotation generator, first-order transformed
// Hamiltonian, the exact-transform oracle, and exchange-block diagnostics.

#pragma once

#include <cmath>

#include "jcm/core.hpp"
#include "jcm/hilbert.hpp"
#include "jcm/linalg.hpp"
#include "jcm/model.hpp"

namespace jcm {

// G = sign * [eps_a (a sigma_+ - a† sigma_-) + eps_b (b sigma_+ - b† sigma_-)].
// Anti-Hermitian; connects states differing by one atomic flip and one
// compensating photon, so it commutes with the total excitation exactly.
struct Generator {
    double eps_a{0.0};
    double eps_b{0.0};
    int sign{+1};
    OperatorMatrix matrix;
};

inline Generator build_generator(const ModelParams& p, const HilbertSpace& space, int sign) {
    if (sign != +1 && sign != -1)
        throw std::invalid_argument("build_generator: sign must be +1 or -1");
    const DerivedQuantities d = derive(p);
    Matrix up = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) {
        const BasisState s = space.basis_state(i);
        if (s.atom != AtomicLevel::minus) continue;
        // a sigma_+ : |n_a, n_b, -> -> sqrt(n_a) |n_a - 1, n_b, +>
        if (s.n_a > 0)
            up(space.index(s.n_a - 1, s.n_b, AtomicLevel::plus), i) +=
                sign * d.eps_a * std::sqrt(double(s.n_a));
        if (s.n_b > 0)
            up(space.index(s.n_a, s.n_b - 1, AtomicLevel::plus), i) +=
                sign * d.eps_b * std::sqrt(double(s.n_b));
    }
    Matrix g = up - Matrix(up.adjoint());
    return {d.eps_a, d.eps_b, sign, {std::move(g), false}};
}

// H + [H, G]. Hermiticity of the result is not asserted.
inline OperatorMatrix first_order_transform(const OperatorMatrix& h, const Generator& gen) {
    if (h.dim() != gen.matrix.dim())
        throw std::invalid_argument("first_order_transform: dimension mismatch");
    const Matrix& g = gen.matrix.mat;
    Matrix out = h.mat + h.mat * g - g * h.mat;
    return {std::move(out), false};
}

// exp(-G) H exp(G), evaluated to all orders. The exponentials are built from
// Hermitian eigendecompositions of iG inside each total-excitation block, so
// the conserved block structure survives with exact zeros.
inline OperatorMatrix exact_transform(const OperatorMatrix& h, const Generator& gen,
                                      const HilbertSpace& space) {
    if (h.dim() != gen.matrix.dim())
        throw std::invalid_argument("exact_transform: dimension mismatch");
    const auto blocks = excitation_blocks(space);
    const Matrix forward = expm_antihermitian_blocked(gen.matrix.mat, blocks, 1.0);
    const Matrix backward = expm_antihermitian_blocked(gen.matrix.mat, blocks, -1.0);
    Matrix out = backward * h.mat * forward;
    return {std::move(out), true};
}

// Frobenius norm of the block of h connecting the two atomic sectors, with both
// states restricted to the truncation-safe interior.
inline double exchange_residual(const OperatorMatrix& h, const HilbertSpace& space) {
    double sumsq = 0.0;
    for (int col = 0; col < space.dim(); ++col) {
        const BasisState sc = space.basis_state(col);
        if (!space.interior(sc)) continue;
        for (int row = 0; row < space.dim(); ++row) {
            const BasisState sr = space.basis_state(row);
            if (sr.atom == sc.atom || !space.interior(sr)) continue;
            sumsq += std::norm(h.mat(row, col));
        }
    }
    return std::sqrt(sumsq);
}

// Overall sign of G that minimizes the exchange residual of the first-order
// transform; ties break to +1. Settles the sign ambiguity empirically.
inline int calibrate_sign(const ModelParams& p, const HilbertSpace& space) {
    const OperatorMatrix h = build_full(p, space);
    double best[2];
    for (int k = 0; k < 2; ++k) {
        const int sign = (k == 0) ? +1 : -1;
        best[k] = exchange_residual(first_order_transform(h, build_generator(p, space, sign)), space);
    }
    return best[1] < best[0] ? -1 : +1;
}

} // namespace jcm
