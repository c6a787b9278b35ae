#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jcm/linalg.hpp"
#include "jcm/model.hpp"
#include "jcm/schrieffer_wolff.hpp"

using namespace jcm;

namespace {

ModelParams baseline(int cutoff = 8) {
    ModelParams p;
    p.omega_a = 1.0;
    p.omega_b = 1.1;
    p.Omega0 = 5.0;
    p.g_a = 0.05;
    p.g_b = 0.05;
    p.cutoff_a = cutoff;
    p.cutoff_b = cutoff;
    return p;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(x[i]);
        sy += std::log(y[i]);
        sxx += std::log(x[i]) * std::log(x[i]);
        sxy += std::log(x[i]) * std::log(y[i]);
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("generator structure") {
    const ModelParams p = baseline();
    const HilbertSpace space = p.space();
    const DerivedQuantities d = derive(p);

    for (int sign : {+1, -1}) {
        const Generator gen = build_generator(p, space, sign);
        CHECK(gen.sign == sign);
        CHECK(gen.eps_a == d.eps_a);

        // anti-Hermitian with exact zeros: G + G† built from identical entries
        CHECK(max_abs(Matrix(gen.matrix.mat + gen.matrix.mat.adjoint())) == 0.0);

        // single matrix element <0,0,+|G|1,0,->
        CHECK(gen.matrix.mat(space.index(0, 0, AtomicLevel::plus),
                             space.index(1, 0, AtomicLevel::minus))
                  .real() == Catch::Approx(sign * d.eps_a).epsilon(1e-15));

        // connects only states differing by one atomic flip and one photon
        for (int col = 0; col < space.dim(); ++col) {
            const BasisState sc = space.basis_state(col);
            for (int row = 0; row < space.dim(); ++row) {
                if (std::abs(gen.matrix.mat(row, col)) == 0.0) continue;
                const BasisState sr = space.basis_state(row);
                CHECK(sr.atom != sc.atom);
                CHECK(space.excitation(sr) == space.excitation(sc));
            }
        }
    }

    SECTION("zero couplings give the zero generator") {
        ModelParams q = p;
        q.g_a = q.g_b = 0.0;
        CHECK(max_abs(build_generator(q, space, +1).matrix.mat) == 0.0);
    }

    SECTION("linear in the couplings at fixed detunings") {
        ModelParams q = p;
        q.g_a *= 3.0;
        q.g_b *= 3.0;
        const Matrix g1 = build_generator(p, space, +1).matrix.mat;
        const Matrix g3 = build_generator(q, space, +1).matrix.mat;
        CHECK(max_abs(Matrix(g3 - 3.0 * g1)) < 1e-15);
    }

    SECTION("invalid sign is rejected") {
        CHECK_THROWS_AS(build_generator(p, space, 0), std::invalid_argument);
    }
}

TEST_CASE("free-Hamiltonian commutators from the transform chain") {
    const ModelParams p = baseline();
    const HilbertSpace space = p.space();
    const Matrix h0 = build_h0(p, space).mat;
    const AtomicOps ops = atomic_ops(space, p.convention);
    const Matrix adag_sm = ladder_a(space).mat.adjoint() * ops.sigma_minus.mat;
    const Matrix a_sp = ladder_a(space).mat * ops.sigma_plus.mat;

    const Matrix c1 = commutator(h0, adag_sm) + p.detuning_a() * adag_sm;
    const Matrix c2 = commutator(h0, a_sp) - p.detuning_a() * a_sp;
    for (int col = 0; col < space.dim(); ++col) {
        if (!space.interior(space.basis_state(col))) continue;
        for (int row = 0; row < space.dim(); ++row) {
            if (!space.interior(space.basis_state(row))) continue;
            CHECK(std::abs(c1(row, col)) < 1e-12);
            CHECK(std::abs(c2(row, col)) < 1e-12);
        }
    }
}

TEST_CASE("first-order transform") {
    const ModelParams p = baseline();
    const HilbertSpace space = p.space();
    const OperatorMatrix h = build_full(p, space);
    const DerivedQuantities d = derive(p);

    SECTION("zero generator leaves the Hamiltonian unchanged") {
        ModelParams q = p;
        q.g_a = q.g_b = 0.0;
        const Generator gzero = build_generator(q, space, +1);
        CHECK(max_abs(Matrix(first_order_transform(h, gzero).mat - h.mat)) == 0.0);
    }

    SECTION("dimension mismatch is rejected") {
        const HilbertSpace small = make_space(2, 2);
        const Generator gen = build_generator(p, small, +1);
        CHECK_THROWS_AS(first_order_transform(h, gen), std::invalid_argument);
    }

    SECTION("calibrated sign cancels the exchange block") {
        const int sign = calibrate_sign(p, space);
        const Generator gen = build_generator(p, space, sign);
        const double residual = exchange_residual(first_order_transform(h, gen), space);
        const double reference = exchange_residual(h, space);
        const double eps2 = d.eps_max() * d.eps_max();
        CHECK(residual < eps2 * reference * 10.0);
        CHECK(residual / reference <= 10.0 * d.eps_max());
        // the cancellation is an operator identity on the truncated space, so
        // only rounding noise survives
        CHECK(residual < 1e-12);
    }

    SECTION("the wrong sign doubles the exchange block") {
        const Generator gen = build_generator(p, space, +1);
        const double residual = exchange_residual(first_order_transform(h, gen), space);
        CHECK(residual == Catch::Approx(2.0 * exchange_residual(h, space)).epsilon(1e-12));
    }
}

TEST_CASE("exchange residual basics") {
    const ModelParams p = baseline();
    const HilbertSpace space = p.space();

    CHECK(exchange_residual(build_h0(p, space), space) == 0.0);

    const OperatorMatrix v = build_v_int(p, space);
    double interior_norm_sq = 0.0;
    for (int col = 0; col < space.dim(); ++col) {
        if (!space.interior(space.basis_state(col))) continue;
        for (int row = 0; row < space.dim(); ++row) {
            if (!space.interior(space.basis_state(row))) continue;
            interior_norm_sq += std::norm(v.mat(row, col));
        }
    }
    CHECK(exchange_residual(v, space) ==
          Catch::Approx(std::sqrt(interior_norm_sq)).epsilon(1e-14));
}

TEST_CASE("exact transform oracle") {
    const ModelParams p = baseline();
    const HilbertSpace space = p.space();
    const OperatorMatrix h = build_full(p, space);
    const int sign = calibrate_sign(p, space);
    const Generator gen = build_generator(p, space, sign);
    const OperatorMatrix transformed = exact_transform(h, gen, space);

    SECTION("zero generator is the identity transform") {
        ModelParams q = p;
        q.g_a = q.g_b = 0.0;
        const Generator gzero = build_generator(q, space, +1);
        CHECK(max_abs(Matrix(exact_transform(h, gzero, space).mat - h.mat)) < 1e-14);
    }

    SECTION("result is Hermitian") {
        CHECK(transformed.hermiticity_violation() < 1e-11);
    }

    SECTION("unitary similarity preserves the spectrum") {
        Eigen::SelfAdjointEigenSolver<Matrix> e1(h.mat);
        Eigen::SelfAdjointEigenSolver<Matrix> e2(transformed.mat);
        CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }

    SECTION("exchange between excitation blocks stays exactly zero") {
        for (int col = 0; col < space.dim(); ++col) {
            const int nc = space.excitation(space.basis_state(col));
            for (int row = 0; row < space.dim(); ++row) {
                if (space.excitation(space.basis_state(row)) == nc) continue;
                CHECK(std::abs(transformed.mat(row, col)) == 0.0);
            }
        }
    }

    SECTION("relative exchange residual scales as the square of the coupling") {
        std::vector<double> scales{1.0, 0.5, 0.25, 0.125};
        std::vector<double> rel;
        double prev_abs = -1.0;
        for (double scale : scales) {
            ModelParams q = p;
            q.g_a *= scale;
            q.g_b *= scale;
            const OperatorMatrix hq = build_full(q, space);
            const Generator gq = build_generator(q, space, sign);
            const double r = exchange_residual(exact_transform(hq, gq, space), space);
            rel.push_back(r / exchange_residual(hq, space));
            if (prev_abs > 0.0) CHECK(r < prev_abs);
            prev_abs = r;
        }
        const double slope = loglog_slope(scales, rel);
        CHECK(slope > 1.9);
        CHECK(slope < 2.1);
    }
}

TEST_CASE("sign calibration") {
    struct Case {
        double omega_a, omega_b, Omega0, g_a, g_b;
    };
    // covers all four sign patterns of (delta_a, delta_b) plus magnitude spreads
    const Case cases[] = {
        {1.0, 1.1, 5.0, 0.05, 0.05},  {1.0, 1.1, 0.5, 0.05, 0.05},
        {1.0, 5.0, 3.04, 0.05, 0.05}, {5.0, 1.0, 3.04, 0.05, 0.05},
        {1.0, 1.1, 5.0, 0.2, 0.01},   {2.0, 2.2, 9.9, 0.1, 0.1},
        {1.0, 1.05, 4.0, 0.02, 0.08}, {0.7, 1.9, 6.5, 0.12, 0.03},
        {1.0, 1.1, 0.2, 0.03, 0.03},  {3.0, 0.5, 1.7, 0.07, 0.02},
    };
    for (const Case& c : cases) {
        ModelParams p;
        p.omega_a = c.omega_a;
        p.omega_b = c.omega_b;
        p.Omega0 = c.Omega0;
        p.g_a = c.g_a;
        p.g_b = c.g_b;
        p.cutoff_a = p.cutoff_b = 5;
        const HilbertSpace space = p.space();
        const int sign = calibrate_sign(p, space);
        CHECK(sign == -1);

        // argmin property
        const OperatorMatrix h = build_full(p, space);
        const double with = exchange_residual(
            first_order_transform(h, build_generator(p, space, sign)), space);
        const double against = exchange_residual(
            first_order_transform(h, build_generator(p, space, -sign)), space);
        CHECK(with <= against);
    }

    SECTION("tie-break at zero coupling is +1") {
        ModelParams p = baseline();
        p.g_a = p.g_b = 0.0;
        CHECK(calibrate_sign(p, p.space()) == +1);
    }
}
