#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "jcm/dynamics.hpp"
#include "jcm/linalg.hpp"
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

double max_series_dev(const TimeSeries& x, const TimeSeries& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.na.size(); ++i) {
        m = std::max(m, std::abs(x.na[i] - y.na[i]));
        m = std::max(m, std::abs(x.nb[i] - y.nb[i]));
    }
    return m;
}

} // namespace

TEST_CASE("propagator basics") {
    const ModelParams p = baseline(4);
    const HilbertSpace space = p.space();
    const OperatorMatrix h = build_full(p, space);

    SECTION("t = 0 gives the identity") {
        CHECK(max_abs(Matrix(propagator(h, 0.0).mat - Matrix::Identity(space.dim(), space.dim()))) <
              1e-13);
    }

    SECTION("group property and unitarity") {
        const Propagator prop(h);
        const Matrix u1 = prop.at(0.7);
        const Matrix u2 = prop.at(1.9);
        const Matrix u12 = prop.at(2.6);
        CHECK(max_abs(Matrix(u1 * u2 - u12)) < 1e-10);
        CHECK(unitarity_defect(u1) < 1e-10);
        CHECK(unitarity_defect(u12) < 1e-10);
    }

    SECTION("diagonal generator gives pure phases") {
        const OperatorMatrix h0 = build_h0(p, space);
        const Matrix u = propagator(h0, 2.3).mat;
        for (int i = 0; i < space.dim(); ++i) {
            const Complex expected = std::exp(-kImag * (h0.mat(i, i).real() * 2.3));
            CHECK(std::abs(u(i, i) - expected) < 1e-12);
        }
        Matrix offdiag = u;
        offdiag.diagonal().setZero();
        CHECK(max_abs(offdiag) < 1e-12);
    }

    SECTION("non-Hermitian generators are rejected") {
        OperatorMatrix bad = h;
        bad.mat(0, 1) += Complex(0.0, 0.5);
        CHECK_THROWS_AS(Propagator(bad), std::domain_error);
    }
}

TEST_CASE("expectation evolution") {
    const ModelParams p = baseline(6);
    const HilbertSpace space = p.space();

    SECTION("eigenstates of the free Hamiltonian stay put") {
        const OperatorMatrix h0 = build_h0(p, space);
        const StateVector psi0 = fock_state(space, 2, 1, AtomicLevel::minus);
        const TimeSeries ts = evolve_expectations(space, h0, psi0, uniform_grid(5.0, 11));
        for (double v : ts.na) CHECK(v == Catch::Approx(2.0).margin(1e-12));
        for (double v : ts.nb) CHECK(v == Catch::Approx(1.0).margin(1e-12));
    }

    SECTION("total excitation is conserved by the full model") {
        const OperatorMatrix h = build_full(p, space);
        const StateVector psi0 = fock_state(space, 1, 0, AtomicLevel::plus);
        const TimeSeries ts = evolve_expectations(space, h, psi0, uniform_grid(100.0, 101));
        // the atom trades excitation with the modes; add its population back
        const Propagator prop(h);
        const Matrix n_op = total_excitation(space).mat;
        double lo = 1e300, hi = -1e300;
        for (double t : ts.times) {
            const Vector psi = prop.evolve(psi0.amplitudes, t);
            const double n = (psi.adjoint() * n_op * psi)(0).real();
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
        CHECK(hi - lo < 1e-10);
        for (std::size_t i = 0; i < ts.na.size(); ++i) {
            CHECK(ts.na[i] >= -1e-10);
            CHECK(ts.nb[i] >= -1e-10);
        }
    }

    SECTION("grid validation") {
        const OperatorMatrix h0 = build_h0(p, space);
        const StateVector psi0 = fock_state(space, 0, 0, AtomicLevel::minus);
        CHECK_THROWS_AS(evolve_expectations(space, h0, psi0, {1.0, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(evolve_expectations(space, h0, psi0, {}), std::invalid_argument);
    }
}

TEST_CASE("coefficient functions") {
    BranchParams bp;
    bp.theta = 0.31;
    bp.omega_A = 1.42;
    bp.omega_B = 1.07;
    const CoefficientSet cs = coefficients(bp);

    SECTION("initial values") {
        CHECK(std::abs(cs.f1(0.0) - 1.0) < 1e-15);
        CHECK(std::abs(cs.f2(0.0)) < 1e-15);
        CHECK(std::abs(cs.g1(0.0) - 1.0) < 1e-15);
        CHECK(std::abs(cs.g2(0.0)) < 1e-15);
    }

    SECTION("degenerate frequencies freeze the mixing for any angle") {
        for (double theta : {0.0, 0.2, 1.1}) {
            CoefficientSet deg{theta, 2.0, 2.0};
            for (double t : {0.3, 2.7, 9.1}) {
                CHECK(std::abs(deg.f1(t) - std::exp(-kImag * (2.0 * t))) < 1e-14);
                CHECK(std::abs(deg.f2(t)) < 1e-14);
            }
        }
    }

    SECTION("unitarity at random samples") {
        std::mt19937 rng(1187);
        std::uniform_real_distribution<double> angle(-1.5, 1.5);
        std::uniform_real_distribution<double> freq(0.1, 3.0);
        std::uniform_real_distribution<double> time(0.0, 50.0);
        for (int i = 0; i < 1000; ++i) {
            const CoefficientSet c{angle(rng), freq(rng), freq(rng)};
            const double t = time(rng);
            CHECK(std::abs(std::norm(c.f1(t)) + std::norm(c.f2(t)) - 1.0) < 1e-12);
            CHECK(std::abs(std::norm(c.g1(t)) + std::norm(c.g2(t)) - 1.0) < 1e-12);
            CHECK(std::abs(c.g2(t) - c.f2(t)) == 0.0);
        }
    }

    SECTION("matches Heisenberg-picture matrix elements") {
        const ModelParams p = baseline(6);
        const HilbertSpace space = p.space();
        const OperatorMatrix heff = build_heff(p, space);
        const Propagator prop(heff);
        const Matrix a = ladder_a(space).mat;
        const Matrix b = ladder_b(space).mat;
        for (int s : {+1, -1}) {
            const BranchParams branch = branch_params(p, s);
            const CoefficientSet c = coefficients(branch);
            const AtomicLevel atom = s > 0 ? AtomicLevel::plus : AtomicLevel::minus;
            const int vac = space.index(0, 0, atom);
            const int one_a = space.index(1, 0, atom);
            const int one_b = space.index(0, 1, atom);
            for (double t : {0.6, 13.7, 41.3}) {
                const Matrix u = prop.at(t);
                const Matrix a_t = u.adjoint() * a * u;
                CHECK(std::abs(a_t(vac, one_a) - c.f1(t)) < 1e-10);
                CHECK(std::abs(a_t(vac, one_b) - c.f2(t)) < 1e-10);
                const Matrix b_t = u.adjoint() * b * u;
                CHECK(std::abs(b_t(vac, one_b) - c.g1(t)) < 1e-10);
                CHECK(std::abs(b_t(vac, one_a) - c.g2(t)) < 1e-10);
            }
        }
    }
}

TEST_CASE("closed-form Fock dynamics") {
    const ModelParams p = baseline();
    const BranchParams bp = branch_params(p, +1);
    const auto grid = uniform_grid(4.0 * M_PI * bp.tau_eff, 97);

    SECTION("single photon follows the beat identity") {
        const TimeSeries ts = closed_form_fock(bp, 1, 0, grid);
        const double s2 = std::sin(2.0 * bp.theta) * std::sin(2.0 * bp.theta);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double arg = 0.5 * (bp.omega_A - bp.omega_B) * grid[i];
            CHECK(ts.na[i] ==
                  Catch::Approx(1.0 - s2 * std::sin(arg) * std::sin(arg)).margin(1e-12));
            // photons swap out of phase: nb = n - na exactly
            CHECK(ts.nb[i] == Catch::Approx(1.0 - ts.na[i]).margin(1e-14));
        }
    }

    SECTION("photon number is conserved for any (n, m)") {
        const TimeSeries ts = closed_form_fock(bp, 3, 2, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(ts.na[i] + ts.nb[i] == Catch::Approx(5.0).margin(1e-9));
    }

    SECTION("matches the matrix backend") {
        const HilbertSpace space = p.space();
        const OperatorMatrix heff = build_heff(p, space);
        const TimeSeries closed = closed_form_fock(bp, 3, 2, grid);
        const TimeSeries eff = evolve_expectations(
            space, heff, fock_state(space, 3, 2, AtomicLevel::plus), grid,
            Backend::effective_numeric);
        CHECK(max_series_dev(closed, eff) < 1e-9);
    }

    SECTION("negative occupations are rejected") {
        CHECK_THROWS_AS(closed_form_fock(bp, -1, 0, grid), std::invalid_argument);
    }
}

TEST_CASE("closed-form coherent dynamics") {
    const ModelParams p = baseline(16);
    const BranchParams bp = branch_params(p, +1);
    const auto grid = uniform_grid(4.0 * M_PI * bp.tau_eff, 97);

    SECTION("single input has no interference term") {
        const Complex alpha(1.3, -0.4);
        const TimeSeries ts = closed_form_coherent(bp, alpha, 0.0, grid);
        const CoefficientSet cs = coefficients(bp);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(ts.na[i] ==
                  Catch::Approx(std::norm(alpha) * std::norm(cs.f1(grid[i]))).margin(1e-12));
    }

    SECTION("beam-splitter conservation") {
        const Complex alpha(1.1, 0.3), beta(-0.4, 0.9);
        const TimeSeries ts = closed_form_coherent(bp, alpha, beta, grid);
        const double total = std::norm(alpha) + std::norm(beta);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(ts.na[i] + ts.nb[i] == Catch::Approx(total).margin(1e-12));
    }

    SECTION("matches the matrix backend well inside the cutoff") {
        const HilbertSpace space = p.space();
        const OperatorMatrix heff = build_heff(p, space);
        const Complex alpha = 1.5, beta = 1.0;
        const TimeSeries eff =
            evolve_expectations(space, heff, coherent_state(space, alpha, beta, AtomicLevel::plus),
                                grid, Backend::effective_numeric);
        const TimeSeries closed = closed_form_coherent(bp, alpha, beta, grid);
        CHECK(max_series_dev(eff, closed) < 5e-8);
    }

    SECTION("at amplitude 2 the Poisson tail past cutoff 16 dominates the error") {
        const HilbertSpace space = p.space();
        const OperatorMatrix heff = build_heff(p, space);
        const Complex alpha = 2.0, beta = 1.0;
        const StateVector psi0 = coherent_state(space, alpha, beta, AtomicLevel::plus);
        const TimeSeries eff =
            evolve_expectations(space, heff, psi0, grid, Backend::effective_numeric);
        const TimeSeries closed = closed_form_coherent(bp, alpha, beta, grid);
        const double dev = max_series_dev(eff, closed);
        // the truncated, renormalized state starts with <n_a> below |alpha|^2 by
        // about 1.5e-5; the backends agree to that truncation floor
        CHECK(dev < 5e-5);
        CHECK(std::abs(eff.na[0] - std::norm(alpha)) < 5e-5);
    }
}

TEST_CASE("full versus effective comparison") {
    SECTION("decoupled model gives three identical constant series") {
        ModelParams p = baseline(4);
        p.g_a = p.g_b = 0.0;
        InitialState init;
        init.field = FockSpec{2, 1};
        init.atom = AtomicLevel::minus;
        const ComparisonResult r = compare_full_vs_effective(p, init, uniform_grid(20.0, 21));
        CHECK(r.max_abs_deviation_na < 1e-12);
        for (std::size_t i = 0; i < r.full.na.size(); ++i) {
            CHECK(r.full.na[i] == Catch::Approx(2.0).margin(1e-12));
            CHECK(r.effective_numeric.na[i] == Catch::Approx(2.0).margin(1e-12));
            CHECK(r.closed_form.na[i] == Catch::Approx(2.0).margin(1e-12));
        }
    }

    SECTION("halving the couplings improves the agreement at fixed J t") {
        InitialState init;
        init.field = FockSpec{1, 0};
        init.atom = AtomicLevel::plus;
        double dev[2];
        int k = 0;
        for (double scale : {1.0, 0.5}) {
            ModelParams p = baseline(6);
            p.g_a *= scale;
            p.g_b *= scale;
            const double j = derive(p).j_coupling;
            const auto grid = uniform_grid(0.15 / j, 301); // fixed dimensionless window J t
            dev[k++] = compare_full_vs_effective(p, init, grid).max_abs_deviation_na;
        }
        CHECK(dev[1] < dev[0]);
    }

    SECTION("branches condition the dynamics") {
        const ModelParams p = baseline();
        const BranchParams bplus = branch_params(p, +1);
        const BranchParams bminus = branch_params(p, -1);
        CHECK(bplus.theta != bminus.theta);
        const double tprobe = M_PI * bplus.tau_eff;
        const auto grid = std::vector<double>{0.5 * tprobe, tprobe};
        const TimeSeries sp = closed_form_fock(bplus, 1, 0, grid);
        const TimeSeries sm = closed_form_fock(bminus, 1, 0, grid);
        CHECK(std::abs(sp.na[1] - sm.na[1]) > 1e-8);
    }

    SECTION("the beat time is slow compared with the bare Rabi time") {
        // degenerate modes make the separation clean: tau_eff = 1/(2 j_eff)
        ModelParams p = baseline();
        p.omega_b = p.omega_a;
        const BranchParams bp = branch_params(p, +1);
        const double rabi_time = 1.0 / std::max(p.g_a, p.g_b);
        CHECK(bp.tau_eff >= 10.0 * rabi_time);
    }
}
