#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "degenlab/errors.hpp"
#include "degenlab/norms.hpp"
#include "degenlab/rng.hpp"
#include "degenlab/solver.hpp"

using namespace degenlab;

namespace {

ProblemSpec legendre_problem(double horizon = 0.25) {
    ProblemSpec spec;
    spec.coeff = DiffusionCoefficient::power_law(1.0);
    spec.bc = BoundaryMode::weighted_neumann();
    spec.model = NemytskiiModel::zero();
    spec.alpha = SpaceTimeField::constant(0.0);
    spec.horizon = horizon;
    spec.u0 = InitialDatum::legendre(2);
    return spec;
}

ProblemSpec wd_problem(double horizon = 0.5) {
    ProblemSpec spec;
    spec.coeff = DiffusionCoefficient::power_law(0.5);
    spec.bc = BoundaryMode::robin_bc(RobinBC{1.0, -1.0, 1.0, 1.0});
    spec.model = NemytskiiModel::zero();
    spec.alpha = SpaceTimeField::constant(0.0);
    spec.horizon = horizon;
    spec.u0 = InitialDatum::polynomial({1.0, 0.0, -1.0});
    return spec;
}

GridFunction smooth_profile(MeshPtr mesh, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> c(9);
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
    return GridFunction::sample(std::move(mesh), [c](double x) {
        double s = 0.5 * c[0];
        for (int m = 1; m <= 4; ++m) {
            s += (c[static_cast<std::size_t>(2 * m - 1)] * std::cos(m * std::numbers::pi * x) +
                  c[static_cast<std::size_t>(2 * m)] * std::sin(m * std::numbers::pi * x)) /
                 (1.0 + m * m);
        }
        return s;
    });
}

}  // namespace

TEST_CASE("Legendre polynomial recurrence") {
    CHECK(legendre_p(0, 0.3) == 1.0);
    CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3));
    CHECK(legendre_p(2, 0.5) == doctest::Approx(0.5 * (3 * 0.25 - 1)).epsilon(1e-15));
    CHECK(legendre_p(3, 0.7) == doctest::Approx(0.5 * (5 * 0.343 - 3 * 0.7)).epsilon(1e-14));
}

TEST_CASE("problem validation names the violated assumption") {
    ProblemSpec spec = wd_problem();
    CHECK_NOTHROW(spec.validate(Degeneracy::WeaklyDegenerate));
    CHECK_THROWS_AS(spec.validate(Degeneracy::StronglyDegenerate), ConfigError);
    try {
        spec.validate(Degeneracy::StronglyDegenerate);
    } catch (const ConfigError& e) {
        CHECK(e.assumption() == "(A.5_SD)");
    }
    spec.model = NemytskiiModel::pure_power(1.0, 3.5, -1);
    CHECK_NOTHROW(spec.validate(Degeneracy::WeaklyDegenerate));  // theta_sup = 4
    spec.bc = BoundaryMode::weighted_neumann();
    spec.model = NemytskiiModel::pure_power(1.0, 2.9, -1);
    CHECK_NOTHROW(spec.validate(Degeneracy::StronglyDegenerate));
    spec.model = NemytskiiModel::pure_power(1.0, 3.0, -1);
    CHECK_THROWS_AS(spec.validate(Degeneracy::StronglyDegenerate), ConfigError);  // theta_sup = 3
}

TEST_CASE("constant equilibrium is exact") {
    ProblemSpec spec = legendre_problem(1.0);
    spec.u0 = InitialDatum::polynomial({1.0});
    SolveParams p;
    p.n = 64;
    p.m = 16;
    const auto r = solve_strict(spec, p);
    REQUIRE(r.converged);
    for (int n = 0; n <= p.m; ++n) {
        for (double v : r.solution.slice(n)) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(r.max_boundary_residual < 1e-12);
}

TEST_CASE("Legendre eigenpair decay") {
    ProblemSpec spec = legendre_problem(0.25);
    SolveParams p;
    p.n = 128;
    p.m = 1024;
    const auto r = solve_strict(spec, p);
    REQUIRE(r.converged);
    const auto mesh = r.solution.mesh;
    double err = 0.0;
    const auto final_slice = r.solution.slice(p.m);
    for (int i = 0; i <= p.n; ++i) {
        const double exact = std::exp(-6.0 * spec.horizon) * legendre_p(2, mesh->node(i));
        err = std::max(err, std::abs(final_slice[static_cast<std::size_t>(i)] - exact));
    }
    CHECK(err < 5e-4);
    CHECK(std::isfinite(r.b_norm));
    CHECK(std::isfinite(r.h_norm));
}

TEST_CASE("energy decay without reaction") {
    ProblemSpec spec = wd_problem();
    SolveParams p;
    p.n = 128;
    p.m = 64;
    const auto r = solve_strict(spec, p);
    REQUIRE(r.converged);
    const auto mesh = r.solution.mesh;
    double prev = 1e300;
    for (int n = 0; n <= p.m; ++n) {
        const double l2 = weighted_l2(*mesh, r.solution.slice(n));
        CHECK(l2 <= prev * (1.0 + 1e-13));
        prev = l2;
    }
}

TEST_CASE("nonnegativity is preserved in the linear case") {
    ProblemSpec spec = wd_problem();
    spec.u0 = InitialDatum::polynomial({1.0, 0.0, -0.9});
    SolveParams p;
    p.n = 128;
    p.m = 64;
    const auto r = solve_strict(spec, p);
    REQUIRE(r.converged);
    CHECK(r.min_value >= -10.0 * p.picard_tol);
}

TEST_CASE("solver preconditions") {
    ProblemSpec spec = wd_problem();
    SolveParams p;
    p.n = 64;
    p.m = 4;

    SUBCASE("regularity claim must be declared") {
        spec.claim = RegularityClaim::L2Only;
        CHECK_THROWS_AS(solve_strict(spec, p), ConfigError);
    }
    SUBCASE("jump data fail the regularity screen") {
        spec.u0 = InitialDatum::sign();
        CHECK_THROWS_AS(solve_strict(spec, p), ConfigError);
    }
    SUBCASE("step-size guard") {
        spec.alpha = SpaceTimeField::constant(10.0);
        p.m = 2;  // dt = 0.25, dt * alpha+ = 2.5 >= 1/2
        CHECK_THROWS_AS(solve_strict(spec, p), ConfigError);
    }
}

TEST_CASE("Picard stall is reported, not hidden") {
    ProblemSpec spec = wd_problem(1.0);
    spec.model = NemytskiiModel::pure_power(5.0, 3.0, -1);
    spec.u0 = InitialDatum::polynomial({2.0});
    SolveParams p;
    p.n = 32;
    p.m = 2;
    p.picard_max = 1;
    p.picard_tol = 1e-12;
    p.check_h1a_claim = false;
    const auto r = solve_strict(spec, p);
    CHECK_FALSE(r.converged);
    CHECK(r.failed_step == 0);
    CHECK(!r.residuals.empty());
}

TEST_CASE("fixed point is insensitive to the Picard starting guess") {
    ProblemSpec spec = wd_problem(0.5);
    spec.alpha = SpaceTimeField::constant(0.5);
    spec.model = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
    spec.u0 = InitialDatum::polynomial({0.3, 0.0, -0.3});
    SolveParams p;
    p.n = 128;
    p.m = 128;
    p.picard_tol = 1e-10;
    const auto r1 = solve_strict(spec, p);
    p.start = PicardStart::Zero;
    const auto r2 = solve_strict(spec, p);
    REQUIRE(r1.converged);
    REQUIRE(r2.converged);
    CHECK(b_norm(r1.solution - r2.solution, spec.coeff) <= 10.0 * p.picard_tol);
}

TEST_CASE("manufactured weakly degenerate solution") {
    // u* = e^{-t} (1 - x^2)^2 with a = sqrt(1 - x^2); both the trace and the
    // trace flux of u* vanish, so generic Robin data are consistent.
    ProblemSpec spec = wd_problem(0.5);
    spec.u0 = InitialDatum::polynomial({1.0, 0.0, -2.0, 0.0, 1.0});
    spec.forcing = [](double t, double x) {
        const double s = 1.0 - x * x;
        const double a = std::sqrt(std::max(s, 0.0));
        return -std::exp(-t) * (s * s + a * (16.0 * x * x - 4.0));
    };
    SolveParams p;
    p.n = 128;
    p.m = 4096;
    const auto r = solve_strict(spec, p);
    REQUIRE(r.converged);
    CHECK(r.max_boundary_residual < 1e-12);
    const auto mesh = r.solution.mesh;
    std::vector<double> err(static_cast<std::size_t>(mesh->num_nodes()));
    const auto last = r.solution.slice(p.m);
    for (int i = 0; i <= p.n; ++i) {
        const double s = 1.0 - mesh->node(i) * mesh->node(i);
        err[static_cast<std::size_t>(i)] =
            last[static_cast<std::size_t>(i)] - std::exp(-spec.horizon) * s * s;
    }
    CHECK(weighted_l2(*mesh, err) < 5e-4);
}

TEST_CASE("convergence study orders") {
    SUBCASE("Legendre benchmark") {
        const std::vector<int> ns = {64, 128};
        const std::vector<int> ms = {8, 16, 32};
        const auto study = convergence_study(ExactCase::Legendre, 2, ns, ms, 0.25);
        CHECK(std::abs(study.spatial_order - 2.0) <= 0.3);
        CHECK(std::abs(study.temporal_order - 1.0) <= 0.2);
        CHECK(study.spatial.back().l2_final_error < 1e-3);
        // constants stay exact at every resolution
        const auto flat = convergence_study(ExactCase::Legendre, 0, ns, {}, 0.25);
        for (const auto& row : flat.spatial) CHECK(row.l2_final_error < 1e-12);
    }
    SUBCASE("manufactured case") {
        const std::vector<int> ns = {64, 128};
        const std::vector<int> ms = {8, 16, 32};
        const auto study = convergence_study(ExactCase::Manufactured, 0, ns, ms, 0.5);
        CHECK(study.spatial_order >= 1.7);
        CHECK(std::abs(study.temporal_order - 1.0) <= 0.2);
    }
}

TEST_CASE("spectral regularization of a jump datum") {
    ProblemSpec spec = wd_problem();
    const auto mesh = make_mesh(256, 2.0);
    const std::vector<double> zeros(static_cast<std::size_t>(mesh->num_nodes()), 0.0);
    const OperatorAssembly op(mesh, spec.coeff, zeros, spec.bc);
    const auto basis = SpectralBasis::compute(op);
    const auto u0 = sample_datum(InitialDatum::sign(), mesh);

    double prev_err = 1e300;
    double prev_semi = 0.0;
    for (int k : {4, 8, 16, 32}) {
        const auto uk = regularize_datum(u0, basis, k);
        std::vector<double> d(u0.values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = uk.values[i] - u0.values[i];
        const double err = weighted_l2(*mesh, d);
        const double semi = seminorm_1a(uk, spec.coeff);
        CHECK(err < prev_err);
        CHECK(semi > prev_semi);
        prev_err = err;
        prev_semi = semi;
    }

    // projection is idempotent on a retained mode
    const int top = basis.size() - 1;
    const GridFunction mode(mesh,
                            std::vector<double>(basis.mode(top - 2).begin(),
                                                basis.mode(top - 2).end()));
    const auto back = regularize_datum(mode, basis, 4);
    for (std::size_t i = 0; i < mode.values.size(); ++i) {
        CHECK(back.values[i] == doctest::Approx(mode.values[i]).epsilon(1e-10));
    }

    // the full active basis reproduces any datum
    bool clamped = false;
    const auto full = regularize_datum(u0, basis, basis.size(), &clamped);
    CHECK_FALSE(clamped);
    for (std::size_t i = 0; i < u0.values.size(); ++i) {
        CHECK(full.values[i] == doctest::Approx(u0.values[i]).epsilon(1e-9));
    }
    regularize_datum(u0, basis, basis.size() + 50, &clamped);
    CHECK(clamped);
}

TEST_CASE("approximation run with a jump datum") {
    ProblemSpec spec = wd_problem(0.5);
    spec.alpha = SpaceTimeField::constant(0.5);
    spec.model = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
    spec.u0 = InitialDatum::sign();
    spec.claim = RegularityClaim::L2Only;
    SolveParams p;
    p.n = 128;
    p.m = 128;
    const std::vector<int> levels = {4, 8, 16, 32};
    const auto r = solve_strong(spec, p, levels);
    CHECK(r.datum_errors_strictly_decreasing);
    CHECK(r.gaps_decreasing);
    CHECK(r.certified);
    for (const auto& c : r.certificates) CHECK(c.holds);
    CHECK(r.stability_constant ==
          doctest::Approx(std::exp((2.0 + 0.5) * 0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(solve_strong(spec, p, std::vector<int>{8}), ConfigError);
    CHECK_THROWS_AS(solve_strong(spec, p, std::vector<int>{8, 4}), ConfigError);
}

TEST_CASE("approximation gaps obey the discrete energy bound") {
    // Zero model, no reaction: the L2 gap contracts, and the energy-norm gap
    // is bounded by sqrt(2 ||w0||^2 + dt |w0|_{1,a}^2).
    ProblemSpec spec = wd_problem(0.5);
    spec.u0 = InitialDatum::sign();
    spec.claim = RegularityClaim::L2Only;
    SolveParams p;
    p.n = 128;
    p.m = 128;
    const std::vector<int> levels = {4, 8, 16, 32};
    const auto r = solve_strong(spec, p, levels);
    const auto mesh = r.limit.mesh;
    const double dt = spec.horizon / p.m;
    const std::vector<double> zeros_alpha(static_cast<std::size_t>(mesh->num_nodes()), 0.0);
    const OperatorAssembly op(mesh, spec.coeff, zeros_alpha, spec.bc);
    const auto basis = SpectralBasis::compute(op);
    const auto u0 = sample_datum(spec.u0, mesh);
    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
        const auto ua = regularize_datum(u0, basis, levels[j]);
        const auto ub = regularize_datum(u0, basis, levels[j + 1]);
        std::vector<double> d(u0.values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = ua.values[i] - ub.values[i];
        const GridFunction w0(mesh, d);
        const double datum_gap = l2_norm(w0);
        const double f0 = seminorm_1a(w0, spec.coeff);
        const double bound =
            std::sqrt(2.0 * datum_gap * datum_gap + dt * f0 * f0) * (1.0 + 1e-9) +
            100.0 * p.picard_tol;
        CHECK(r.cauchy_gaps[j] >= datum_gap * (1.0 - 1e-9));  // sup term alone
        CHECK(r.cauchy_gaps[j] <= bound);
    }
}

TEST_CASE("smooth data make all levels nearly identical") {
    ProblemSpec spec = wd_problem(0.5);
    spec.u0 = InitialDatum::polynomial({0.5, 0.0, -0.5});
    SolveParams p;
    p.n = 128;
    p.m = 64;
    const auto r = solve_strong(spec, p, std::vector<int>{16, 32, 64});
    CHECK(r.cauchy_gaps.back() < 1e-2);
}

TEST_CASE("stability gaps against the exponential bound") {
    ProblemSpec spec = wd_problem(0.5);
    SolveParams p;
    p.n = 128;
    p.m = 256;
    MeshPtr mesh = make_mesh(p.n, 2.0);

    SUBCASE("identical data") {
        const auto u0 = smooth_profile(mesh, 1);
        const auto [lhs, rhs] = stability_gap(spec, u0, u0, p);
        CHECK(lhs == 0.0);
        CHECK(rhs == 0.0);
    }

    SUBCASE("contraction of the sup-in-time gap, energy gap within sqrt(2)") {
        const double dt = spec.horizon / p.m;
        for (std::uint64_t i = 0; i < 10; ++i) {
            const auto u0 = smooth_profile(mesh, 100 + i);
            const auto v0 = smooth_profile(mesh, 200 + i);
            const auto ru = solve_strict_with_datum(spec, p, u0);
            const auto rv = solve_strict_with_datum(spec, p, v0);
            const auto diff = ru.solution - rv.solution;
            std::vector<double> d(u0.values.size());
            for (std::size_t k = 0; k < d.size(); ++k) d[k] = u0.values[k] - v0.values[k];
            const GridFunction w0(mesh, d);
            const double datum = l2_norm(w0);
            double sup = 0.0;
            for (int n = 0; n <= p.m; ++n) {
                sup = std::max(sup, weighted_l2(*mesh, diff.slice(n)));
            }
            CHECK(sup <= datum * (1.0 + 10.0 * p.picard_tol));
            const double f0 = seminorm_1a(w0, spec.coeff);
            const double bound =
                std::sqrt(2.0 * datum * datum + dt * f0 * f0) * (1.0 + 1e-9);
            CHECK(b_norm(diff, spec.coeff) <= bound);
        }
    }

    SUBCASE("strong damping leaves the bound slack") {
        spec.alpha = SpaceTimeField::constant(-10.0);
        const auto u0 = smooth_profile(mesh, 7);
        const auto v0 = smooth_profile(mesh, 8);
        const auto ru = solve_strict_with_datum(spec, p, u0);
        const auto rv = solve_strict_with_datum(spec, p, v0);
        const auto diff = ru.solution - rv.solution;
        std::vector<double> d(u0.values.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = u0.values[k] - v0.values[k];
        const double datum = l2_norm(GridFunction(mesh, d));
        // with alpha <= 0 the exponential bound uses alpha+ = 0, so the
        // final-time gap decays far below the datum bound (recorded slack)
        const double final_gap = weighted_l2(*mesh, diff.slice(p.m));
        CHECK(final_gap < 0.1 * datum);
    }

    SUBCASE("conforming nonlinear model stays within the certificate") {
        spec.alpha = SpaceTimeField::constant(0.5);
        spec.model = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
        const double c_t = stability_constant(spec);
        CHECK(c_t == doctest::Approx(std::exp(1.25)).epsilon(1e-12));
        for (std::uint64_t i = 0; i < 5; ++i) {
            const auto u0 = smooth_profile(mesh, 300 + i);
            const auto v0 = smooth_profile(mesh, 400 + i);
            const auto [lhs, rhs] = stability_gap(spec, u0, v0, p);
            CHECK(lhs <= 1.05 * rhs);
        }
    }
}
