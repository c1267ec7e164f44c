#include "degenlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>

#include "degenlab/errors.hpp"
#include "degenlab/norms.hpp"

namespace degenlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_ratio(double lhs, double rhs) {
    if (rhs > 0.0) return lhs / rhs;
    return lhs > 0.0 ? kInf : 0.0;
}
}  // namespace

double gn_alpha(double q) {
    if (!(q >= 0.5)) throw DomainError("the L^inf interpolation exponent needs q >= 1/2");
    return 2.0 / (2.0 + q);
}

double gn_beta(double p, double q) {
    if (!(2.0 * q >= 1.0) || !(2.0 * q < p)) {
        throw DomainError("the L^p interpolation exponent needs 1 <= 2q < p");
    }
    const double beta = (2.0 / p) * (p - 2.0 * q) / (q + 2.0);
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("interpolation exponent left (0, 1)");
    return beta;
}

CoefficientProfile CoefficientProfile::analyze(const DiffusionCoefficient& coeff, int levels) {
    const DegeneracyReport report = classify(coeff, levels);
    return CoefficientProfile{coeff, report.classification, report.k_constant};
}

InequalityTrial check_sob1(const CoefficientProfile& profile, const GridFunction& u, double p) {
    if (profile.classification == Degeneracy::StronglyDegenerate) {
        throw DomainError("the embedding constant needs a finite reciprocal integral (k = inf)");
    }
    InequalityTrial trial;
    trial.lemma = "sob1";
    trial.p = p;
    trial.n = u.mesh->num_cells();
    trial.lhs = lp_norm(u, p);
    trial.rhs_factor = norm_1a(u, profile.coeff);
    trial.ratio = safe_ratio(trial.lhs, trial.rhs_factor);
    trial.explicit_constant = 4.0 * std::max(profile.k, std::numbers::sqrt2 / 2.0);
    trial.flag = trial.lhs <= trial.explicit_constant * trial.rhs_factor * (1.0 + 1e-6);
    return trial;
}

InequalityTrial check_gn_linf(const CoefficientProfile& profile, const GridFunction& u, double q) {
    if (profile.classification == Degeneracy::StronglyDegenerate) {
        throw DomainError("the L^inf interpolation bound needs an integrable 1/a");
    }
    const double alpha = gn_alpha(q);
    InequalityTrial trial;
    trial.lemma = "gn_linf";
    trial.q = q;
    trial.n = u.mesh->num_cells();
    trial.lhs = linf_norm(u);
    trial.rhs_factor =
        std::pow(norm_1a(u, profile.coeff), alpha) * std::pow(lp_norm(u, 2.0 * q), 1.0 - alpha);
    trial.ratio = safe_ratio(trial.lhs, trial.rhs_factor);
    return trial;
}

InequalityTrial check_gn_lp(const CoefficientProfile& profile, const GridFunction& u, double p,
                            double q) {
    if (profile.classification == Degeneracy::StronglyDegenerate) {
        throw DomainError("the L^p interpolation bound needs an integrable 1/a");
    }
    const double beta = gn_beta(p, q);
    InequalityTrial trial;
    trial.lemma = "gn_lp";
    trial.p = p;
    trial.q = q;
    trial.n = u.mesh->num_cells();
    trial.lhs = lp_norm(u, p);
    trial.rhs_factor =
        std::pow(norm_1a(u, profile.coeff), beta) * std::pow(lp_norm(u, 2.0 * q), 1.0 - beta);
    trial.ratio = safe_ratio(trial.lhs, trial.rhs_factor);
    return trial;
}

InequalityTrial check_sob2(const CoefficientProfile& profile, const SpaceTimeFunction& u, double p) {
    if (!(p >= 1.0 && p <= 5.0)) {
        throw DomainError("the evolution embedding holds for p in [1, 5] only");
    }
    InequalityTrial trial;
    trial.lemma = "sob2";
    trial.p = p;
    trial.horizon = u.time.horizon;
    trial.n = u.mesh->num_cells();
    trial.lhs = lp_qt_norm(u, p);
    trial.rhs_factor =
        std::pow(u.time.horizon, (5.0 - p) / (3.0 * p)) * b_norm(u, profile.coeff);
    trial.ratio = safe_ratio(trial.lhs, trial.rhs_factor);
    return trial;
}

InequalityTrial check_sob3(const CoefficientProfile& profile, const SpaceTimeFunction& u, double p) {
    if (!(p >= 1.0)) throw DomainError("the strict-space embedding needs p >= 1");
    InequalityTrial trial;
    trial.lemma = "sob3";
    trial.p = p;
    trial.horizon = u.time.horizon;
    trial.n = u.mesh->num_cells();
    trial.lhs = lp_qt_norm(u, 2.0 * p);
    trial.rhs_factor = std::pow(u.time.horizon, 1.0 / (2.0 * p)) * h_norm(u, profile.coeff);
    trial.ratio = safe_ratio(trial.lhs, trial.rhs_factor);
    return trial;
}

std::string to_string(TestFamily family) {
    switch (family) {
        case TestFamily::TrigPolynomial: return "trig_polynomial";
        case TestFamily::PiecewiseBump: return "piecewise_bump";
        case TestFamily::BoundarySpike: return "boundary_spike";
    }
    return "?";
}

std::pair<std::vector<double>, std::vector<double>> family_box(TestFamily family, bool spacetime) {
    std::vector<double> lo, hi;
    switch (family) {
        case TestFamily::TrigPolynomial:
            lo.assign(13, -1.0);
            hi.assign(13, 1.0);
            break;
        case TestFamily::PiecewiseBump:
            for (int b = 0; b < 3; ++b) {
                lo.insert(lo.end(), {-0.9, 0.05, -1.0});
                hi.insert(hi.end(), {0.9, 0.6, 1.0});
            }
            break;
        case TestFamily::BoundarySpike:
            lo = {0.05, 1e-3, -1.0, -1.0, -1.0};
            hi = {0.45, 0.3, 1.0, 1.0, 1.0};
            break;
    }
    if (spacetime) {  // exponential-in-time decay rate
        lo.push_back(0.0);
        hi.push_back(8.0);
    }
    return {lo, hi};
}

FamilyParams random_family_params(TestFamily family, bool spacetime, Rng& rng) {
    const auto [lo, hi] = family_box(family, spacetime);
    FamilyParams p;
    p.family = family;
    p.raw.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) p.raw[i] = rng.uniform(lo[i], hi[i]);
    return p;
}

FamilyParams perturb_family_params(const FamilyParams& params, bool spacetime, double step,
                                   Rng& rng) {
    const auto [lo, hi] = family_box(params.family, spacetime);
    FamilyParams out = params;
    for (std::size_t i = 0; i < out.raw.size(); ++i) {
        const double width = hi[i] - lo[i];
        out.raw[i] = std::clamp(out.raw[i] + step * width * rng.normal(), lo[i], hi[i]);
    }
    return out;
}

double family_value(const FamilyParams& params, double x) {
    switch (params.family) {
        case TestFamily::TrigPolynomial: {
            double s = 0.5 * params.raw[0];
            for (int m = 1; m <= 6; ++m) {
                s += params.raw[static_cast<std::size_t>(2 * m - 1)] *
                         std::cos(m * std::numbers::pi * x) +
                     params.raw[static_cast<std::size_t>(2 * m)] *
                         std::sin(m * std::numbers::pi * x);
            }
            return s;
        }
        case TestFamily::PiecewiseBump: {
            double s = 0.0;
            for (int b = 0; b < 3; ++b) {
                const double c = params.raw[static_cast<std::size_t>(3 * b)];
                const double w = params.raw[static_cast<std::size_t>(3 * b + 1)];
                const double h = params.raw[static_cast<std::size_t>(3 * b + 2)];
                s += h * std::max(0.0, 1.0 - std::abs(x - c) / w);
            }
            return s;
        }
        case TestFamily::BoundarySpike: {
            const double s = params.raw[0];
            const double eps = params.raw[1];
            const double wl = params.raw[2];
            const double wr = params.raw[3];
            const double core = params.raw[4];
            return core + wl * std::pow((1.0 + x) + eps, -s) + wr * std::pow((1.0 - x) + eps, -s);
        }
    }
    return 0.0;
}

GridFunction synthesize(const FamilyParams& params, MeshPtr mesh) {
    return GridFunction::sample(std::move(mesh),
                                [&params](double x) { return family_value(params, x); });
}

SpaceTimeFunction synthesize_spacetime(const FamilyParams& params, MeshPtr mesh,
                                       const TimeGrid& tg) {
    const double lambda = params.raw.back();
    return SpaceTimeFunction::sample(tg, std::move(mesh), [&params, lambda](double t, double x) {
        return std::exp(-lambda * t) * family_value(params, x);
    });
}

std::string family_id(const FamilyParams& params) {
    // FNV-1a digest of the raw parameters; stable across runs.
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : params.raw) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "#%016llx", static_cast<unsigned long long>(h));
    return to_string(params.family) + buf;
}

SearchOutcome adversarial_search(const std::function<InequalityTrial(const FamilyParams&)>& objective,
                                 TestFamily family, bool spacetime, int iterations,
                                 std::uint64_t seed) {
    if (iterations < 1) throw DomainError("adversarial search needs at least one iteration");
    Rng rng(seed ^ 0x5eedULL);
    SearchOutcome out;
    out.worst.ratio = -1.0;
    FamilyParams current;
    double current_ratio = -1.0;
    bool have_current = false;
    int since_improvement = 0;
    const int plateau_limit = 25;
    for (int trial = 0; trial < iterations; ++trial) {
        FamilyParams candidate;
        if (!have_current || since_improvement >= plateau_limit) {
            candidate = random_family_params(family, spacetime, rng);
            since_improvement = 0;
            current_ratio = -1.0;  // fresh restart
        } else {
            candidate = perturb_family_params(current, spacetime, 0.15, rng);
        }
        InequalityTrial t = objective(candidate);
        const double r = std::isfinite(t.ratio) ? t.ratio : -1.0;
        if (r > current_ratio) {
            current = candidate;
            current_ratio = r;
            since_improvement = 0;
        } else {
            ++since_improvement;
        }
        have_current = true;
        if (r > out.worst.ratio) {
            out.worst = t;
            out.argmax = candidate;
        }
        ++out.trials;
    }
    return out;
}

}  // namespace degenlab
