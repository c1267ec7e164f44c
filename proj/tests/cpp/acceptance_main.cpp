// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run all criteria with no arguments, or a single one
// with --criterion <k>.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "degenlab/inequalities.hpp"
#include "degenlab/nemytskii.hpp"
#include "degenlab/norms.hpp"
#include "degenlab/rng.hpp"
#include "degenlab/solver.hpp"

using namespace degenlab;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> run;
};

GridFunction smooth_pair_profile(MeshPtr mesh, Rng& rng) {
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

// 1. Interpolation exponent formulas and the complement identity.
bool criterion_exponents(std::string& detail) {
    Rng rng(20240001);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double q = rng.uniform(0.5, 4.0);
        const double p = 2.0 * q + rng.uniform(0.1, 6.0);
        const double alpha = gn_alpha(q);
        const double beta = gn_beta(p, q);
        worst = std::max(worst, std::abs(alpha - 2.0 / (2.0 + q)));
        worst = std::max(worst, std::abs(beta - (2.0 / p) * (p - 2.0 * q) / (q + 2.0)));
        worst = std::max(worst, std::abs(1.0 - beta - (q / p) * (p + 4.0) / (q + 2.0)));
        worst = std::max(worst, std::abs(alpha + (1.0 - alpha) - 1.0));
    }
    std::ostringstream os;
    os << "worst identity residual " << worst << " (tolerance 1e-14)";
    detail = os.str();
    return worst <= 1e-14;
}

// 2. The explicit embedding constant over a randomized corpus at two
// successive resolutions.
bool criterion_explicit_constant(std::string& detail) {
    const std::vector<double> gammas = {0.25, 0.5, 0.75};
    const std::vector<double> ps = {2.0, 3.0, 4.0, 6.0};
    std::vector<CoefficientProfile> profiles;
    for (double g : gammas) {
        profiles.push_back(CoefficientProfile::analyze(DiffusionCoefficient::power_law(g)));
    }
    const auto coarse = make_mesh(256, 2.0);
    const auto fine = make_mesh(512, 2.0);
    int violations = 0;
    double worst_margin = 1e300;
    for (int i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_trial(20240002, static_cast<std::uint64_t>(i));
        const auto params = random_family_params(TestFamily::TrigPolynomial, false, rng);
        const auto& profile = profiles[static_cast<std::size_t>(i) % profiles.size()];
        const double p = ps[static_cast<std::size_t>(i / 3) % ps.size()];
        for (const auto& mesh : {coarse, fine}) {
            const auto trial = check_sob1(profile, synthesize(params, mesh), p);
            if (!trial.flag) ++violations;
            worst_margin = std::min(worst_margin, trial.explicit_constant - trial.ratio);
        }
    }
    std::ostringstream os;
    os << violations << " violations in 1000 trials x 2 resolutions; smallest margin "
       << worst_margin;
    detail = os.str();
    return violations == 0;
}

// 3. One-homogeneity of every checker's ratio.
bool criterion_homogeneity(std::string& detail) {
    const auto profile = CoefficientProfile::analyze(DiffusionCoefficient::power_law(0.5));
    const auto mesh = make_mesh(256, 2.0);
    const TimeGrid tg(0.5, 64);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        Rng rng = Rng::for_trial(20240003, static_cast<std::uint64_t>(i));
        const auto params = random_family_params(TestFamily::TrigPolynomial, false, rng);
        const auto stp = random_family_params(TestFamily::TrigPolynomial, true, rng);
        const auto u = synthesize(params, mesh);
        const auto w = synthesize_spacetime(stp, mesh, tg);
        const double base[5] = {check_sob1(profile, u, 3.0).ratio,
                                check_gn_linf(profile, u, 1.0).ratio,
                                check_gn_lp(profile, u, 5.0, 1.0).ratio,
                                check_sob2(profile, w, 3.0).ratio,
                                check_sob3(profile, w, 2.0).ratio};
        for (double lambda : {1e-3, 1e3}) {
            GridFunction su = u;
            for (auto& v : su.values) v *= lambda;
            SpaceTimeFunction sw = w;
            for (auto& v : sw.data) v *= lambda;
            const double scaled[5] = {check_sob1(profile, su, 3.0).ratio,
                                      check_gn_linf(profile, su, 1.0).ratio,
                                      check_gn_lp(profile, su, 5.0, 1.0).ratio,
                                      check_sob2(profile, sw, 3.0).ratio,
                                      check_sob3(profile, sw, 2.0).ratio};
            for (int k = 0; k < 5; ++k) {
                if (base[k] > 0.0) {
                    worst = std::max(worst, std::abs(scaled[k] - base[k]) / base[k]);
                }
            }
        }
    }
    std::ostringstream os;
    os << "worst relative drift " << worst << " (tolerance 1e-10)";
    detail = os.str();
    return worst <= 1e-10;
}

// 4. Adversarial worst ratios stay put from N = 256 to N = 512.
bool criterion_adversarial_stability(std::string& detail) {
    const auto profile = CoefficientProfile::analyze(DiffusionCoefficient::power_law(0.5));
    const auto coarse = make_mesh(256, 2.0);
    const auto fine = make_mesh(512, 2.0);
    const TimeGrid tg(0.5, 64);

    struct Target {
        std::string lemma;
        double p, q;
        bool spacetime;
    };
    const std::vector<Target> targets = {{"gn_linf", 0.0, 1.0, false}, {"gn_lp", 5.0, 1.0, false},
                                         {"sob2", 3.0, 0.0, true},     {"sob2", 5.0, 0.0, true},
                                         {"sob3", 1.0, 0.0, true},     {"sob3", 2.0, 0.0, true}};
    const std::vector<TestFamily> families = {TestFamily::TrigPolynomial,
                                              TestFamily::PiecewiseBump,
                                              TestFamily::BoundarySpike};
    std::ostringstream os;
    bool pass = true;
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const auto& t = targets[ti];
        auto eval = [&](const FamilyParams& fp, const MeshPtr& mesh) {
            if (t.lemma == "gn_linf") return check_gn_linf(profile, synthesize(fp, mesh), t.q);
            if (t.lemma == "gn_lp") return check_gn_lp(profile, synthesize(fp, mesh), t.p, t.q);
            if (t.lemma == "sob2")
                return check_sob2(profile, synthesize_spacetime(fp, mesh, tg), t.p);
            return check_sob3(profile, synthesize_spacetime(fp, mesh, tg), t.p);
        };
        InequalityTrial worst;
        worst.ratio = -1.0;
        FamilyParams argmax;
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            auto objective = [&](const FamilyParams& fp) { return eval(fp, coarse); };
            const auto out = adversarial_search(objective, families[fi], t.spacetime, 150,
                                                20240004 + ti * 8 + fi);
            if (out.worst.ratio > worst.ratio) {
                worst = out.worst;
                argmax = out.argmax;
            }
        }
        const auto refined = eval(argmax, fine);
        const double change = std::abs(refined.ratio - worst.ratio) / worst.ratio;
        pass = pass && change < 0.10;
        os << t.lemma << "(p=" << t.p << ",q=" << t.q << "): " << worst.ratio << " -> "
           << refined.ratio << " (" << change * 100.0 << "%) ";
    }
    detail = os.str();
    return pass;
}

// 5. Weighted symmetry and exact dissipativity of the assembled operator.
bool criterion_operator_structure(std::string& detail) {
    const auto mesh = make_mesh(256, 2.0);
    const auto coeff = DiffusionCoefficient::power_law(0.5);
    const std::vector<double> zero_alpha(static_cast<std::size_t>(mesh->num_nodes()), 0.0);
    double worst_asym = 0.0;
    double worst_direct = -1e300;
    bool identity_nonpositive = true;
    for (int b = 0; b < 10; ++b) {
        Rng rng = Rng::for_trial(20240005, static_cast<std::uint64_t>(b));
        RobinBC bc;
        bc.beta0 = rng.uniform(0.0, 2.0);
        bc.beta1 = -rng.uniform(0.1, 2.0);
        bc.gamma0 = rng.uniform(0.0, 2.0);
        bc.gamma1 = rng.uniform(0.1, 2.0);
        const OperatorAssembly op(mesh, coeff, zero_alpha, BoundaryMode::robin_bc(bc));
        worst_asym = std::max(worst_asym, op.weighted_asymmetry());
        for (int f = 0; f < 500; ++f) {
            Rng frng = Rng::for_trial(20240006, static_cast<std::uint64_t>(b * 1000 + f));
            std::vector<double> u(static_cast<std::size_t>(mesh->num_nodes()));
            for (auto& v : u) v = frng.uniform(-1.0, 1.0);
            const double direct = op.quadratic_form(u);
            const double identity = op.quadratic_form_identity(u);
            identity_nonpositive = identity_nonpositive && identity <= 0.0;
            worst_direct = std::max(worst_direct, direct / std::max(1.0, std::abs(identity)));
        }
    }
    std::ostringstream os;
    os << "asymmetry " << worst_asym << " (<=1e-12), scaled direct form max " << worst_direct
       << " (<=1e-12), identity nonpositive " << (identity_nonpositive ? "yes" : "no");
    detail = os.str();
    return worst_asym <= 1e-12 && worst_direct <= 1e-12 && identity_nonpositive;
}

// 6. The Legendre benchmark: observed orders and the absolute error.
bool criterion_legendre_benchmark(std::string& detail) {
    const std::vector<int> ns = {64, 128, 256};
    const std::vector<int> ms = {8, 16, 32};
    const auto study = convergence_study(ExactCase::Legendre, 2, ns, ms, 0.25);
    const double abs_err = study.spatial.back().l2_final_error;
    std::ostringstream os;
    os << "spatial order " << study.spatial_order << " (2.0 +- 0.3), temporal order "
       << study.temporal_order << " (1.0 +- 0.2), |error|(n=256, m=n^2) = " << abs_err
       << " (<= 1e-3)";
    detail = os.str();
    return std::abs(study.spatial_order - 2.0) <= 0.3 &&
           std::abs(study.temporal_order - 1.0) <= 0.2 && abs_err <= 1e-3;
}

// 7. The stability certificate at the stated constants. The first clause
// asserts ||u - v||_B <= (1 + 10 tol) ||u0 - v0|| for the heat-type flow;
// the discrete energy identity forces the energy-norm gap of a decaying
// difference toward sqrt(2) times the datum gap, so this clause measures
// that defect rather than hiding it (see the solver tests for the
// certifiable discrete bounds).
bool criterion_stability_certificates(std::string& detail) {
    SolveParams params;
    params.n = 256;
    params.m = 512;
    params.picard_tol = 1e-10;
    MeshPtr mesh = make_mesh(params.n, 2.0);

    ProblemSpec zero_spec;
    zero_spec.coeff = DiffusionCoefficient::power_law(0.5);
    zero_spec.bc = BoundaryMode::robin_bc(RobinBC{1.0, -1.0, 1.0, 1.0});
    zero_spec.horizon = 0.5;
    double worst_zero = 0.0;
    for (int i = 0; i < 50; ++i) {
        Rng rng = Rng::for_trial(20240007, static_cast<std::uint64_t>(i));
        const auto u0 = smooth_pair_profile(mesh, rng);
        const auto v0 = smooth_pair_profile(mesh, rng);
        const auto [lhs, rhs] = stability_gap(zero_spec, u0, v0, params);
        if (rhs > 0.0) worst_zero = std::max(worst_zero, lhs / rhs);
    }
    const bool zero_ok = worst_zero <= 1.0 + 10.0 * params.picard_tol;

    ProblemSpec nl_spec = zero_spec;
    nl_spec.alpha = SpaceTimeField::constant(0.5);
    nl_spec.model = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
    double worst_nl = 0.0;
    for (int i = 0; i < 20; ++i) {
        Rng rng = Rng::for_trial(20240008, static_cast<std::uint64_t>(i));
        const auto u0 = smooth_pair_profile(mesh, rng);
        const auto v0 = smooth_pair_profile(mesh, rng);
        const auto [lhs, rhs] = stability_gap(nl_spec, u0, v0, params);
        if (rhs > 0.0) worst_nl = std::max(worst_nl, lhs / rhs);
    }
    const bool nl_ok = worst_nl <= 1.05;

    std::ostringstream os;
    os << "zero model worst ratio " << worst_zero << " (required <= 1 + 1e-9" << ", C_T = 1"
       << (zero_ok ? "" : "; UNATTAINABLE: the energy identity places the ratio in [1, sqrt(2)]")
       << "), nonlinear worst ratio " << worst_nl << " vs 1.05 with C_T = e^{(nu+0.5)/2}";
    detail = os.str();
    return zero_ok && nl_ok;
}

// 8. Strong-solution construction with certificates.
bool criterion_strong_construction(std::string& detail) {
    ProblemSpec spec;
    spec.coeff = DiffusionCoefficient::power_law(0.5);
    spec.bc = BoundaryMode::robin_bc(RobinBC{1.0, -1.0, 1.0, 1.0});
    spec.alpha = SpaceTimeField::constant(0.5);
    spec.model = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
    spec.horizon = 0.5;
    spec.u0 = InitialDatum::sign();
    spec.claim = RegularityClaim::L2Only;
    SolveParams params;
    params.n = 256;
    params.m = 512;
    const std::vector<int> levels = {4, 8, 16, 32};
    const auto r = solve_strong(spec, params, levels);
    std::ostringstream os;
    os << "datum errors";
    for (double e : r.initial_data_errors) os << ' ' << e;
    os << "; gaps";
    for (double g : r.cauchy_gaps) os << ' ' << g;
    os << "; C_T = " << r.stability_constant << "; strictly decreasing "
       << (r.datum_errors_strictly_decreasing ? "yes" : "no") << ", certified "
       << (r.certified ? "yes" : "no");
    detail = os.str();
    return r.datum_errors_strictly_decreasing && r.gaps_decreasing && r.certified;
}

// 9. Nonlinearity conformance and the empirical Lipschitz table.
bool criterion_nemytskii_conformance(std::string& detail) {
    const auto example = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(1.0));
    const auto sink = NemytskiiModel::pure_power(1.0, 3.0, -1);
    const auto r1 = validate_A3(example, 100000, 1.0, 20240009);
    const auto r2 = validate_A3(sink, 100000, 1.0, 20240010);

    // K(R, T) over a fixed pool of static pairs; ball membership is frozen
    // at the largest horizon, where the energy norm is largest, so each pair
    // stays inside its ball for every shorter horizon.
    const auto coeff = DiffusionCoefficient::power_law(0.5);
    const auto mesh = make_mesh(128, 2.0);
    const auto active = NemytskiiModel::paper_example(2.0, SpaceTimeField::constant(0.5));
    const std::vector<double> radii = {1.0, 5.0, 10.0};
    const std::vector<double> horizons = {0.25, 0.5, 1.0};
    std::vector<std::vector<double>> table(horizons.size(),
                                           std::vector<double>(radii.size(), 0.0));
    for (int i = 0; i < 30; ++i) {
        Rng rng = Rng::for_trial(20240011, static_cast<std::uint64_t>(i));
        const GridFunction a = smooth_pair_profile(mesh, rng);
        const GridFunction b = smooth_pair_profile(mesh, rng);
        const double target = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const TimeGrid tg_max(horizons.back(), 32);
        SpaceTimeFunction ua_max(tg_max, mesh), ub_max(tg_max, mesh);
        for (int n = 0; n <= tg_max.steps; ++n) {
            ua_max.set_slice(n, a.values);
            ub_max.set_slice(n, b.values);
        }
        const double scale =
            target / std::max({b_norm(ua_max, coeff), b_norm(ub_max, coeff), 1e-12});
        for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
            const TimeGrid tg(horizons[hi], 32);
            SpaceTimeFunction ua(tg, mesh), ub(tg, mesh);
            for (int n = 0; n <= tg.steps; ++n) {
                ua.set_slice(n, a.values);
                ub.set_slice(n, b.values);
            }
            for (auto& v : ua.data) v *= scale;
            for (auto& v : ub.data) v *= scale;
            const double ratio = lipschitz_ratio(active, coeff, ua, ub);
            for (std::size_t ri = 0; ri < radii.size(); ++ri) {
                if (target <= radii[ri]) table[hi][ri] = std::max(table[hi][ri], ratio);
            }
        }
    }
    bool monotone = true;
    for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            if (ri > 0 && table[hi][ri] + 1e-15 < table[hi][ri - 1]) monotone = false;
            if (hi > 0 && table[hi][ri] + 1e-12 < table[hi - 1][ri]) monotone = false;
        }
    }
    std::ostringstream os;
    os << "example conforming " << (r1.conforming ? "yes" : "no") << ", sink conforming "
       << (r2.conforming ? "yes" : "no") << ", K(R,T) nondecreasing "
       << (monotone ? "yes" : "no") << ", K(10, 1.0) = " << table.back().back();
    detail = os.str();
    return r1.conforming && r2.conforming && monotone;
}

// 10. Degeneracy classification with the closed-form constants.
bool criterion_classification(std::string& detail) {
    bool pass = true;
    std::ostringstream os;
    for (double g : {0.25, 0.5, 0.75, 0.99, 1.0, 1.5, 2.0}) {
        const auto rep = classify(DiffusionCoefficient::power_law(g));
        const bool expect_wd = g < 1.0;
        const bool got_wd = rep.classification == Degeneracy::WeaklyDegenerate;
        if (expect_wd != got_wd) {
            pass = false;
            os << "gamma=" << g << " misclassified; ";
        }
    }
    const auto half = classify(DiffusionCoefficient::power_law(0.5));
    const double k_err = std::abs(half.k_constant - std::sqrt(std::numbers::pi));
    pass = pass && k_err <= 1e-4;
    const auto a5 = check_A5_SD(DiffusionCoefficient::power_law(1.0), 2.0);
    pass = pass && a5.status == ConditionStatus::Holds;
    os << "k(1/2) = " << half.k_constant << " (|err| = " << k_err
       << " <= 1e-4), admissibility(gamma=1, theta=2) " << to_string(a5.status);
    detail = os.str();
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "interpolation exponent formulas", criterion_exponents},
        {2, "explicit embedding constant", criterion_explicit_constant},
        {3, "checker ratio homogeneity", criterion_homogeneity},
        {4, "adversarial refinement stability", criterion_adversarial_stability},
        {5, "operator symmetry and dissipativity", criterion_operator_structure},
        {6, "Legendre benchmark orders", criterion_legendre_benchmark},
        {7, "stability certificates", criterion_stability_certificates},
        {8, "strong-solution construction", criterion_strong_construction},
        {9, "nonlinearity conformance", criterion_nemytskii_conformance},
        {10, "degeneracy classification", criterion_classification},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
        }
    }

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s\n        %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
