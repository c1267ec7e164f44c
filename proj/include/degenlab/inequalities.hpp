#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "degenlab/coefficient.hpp"
#include "degenlab/mesh.hpp"
#include "degenlab/rng.hpp"

namespace degenlab {

/// Interpolation exponent of the L^infinity bound: alpha = 2/(2 + q), q >= 1/2.
double gn_alpha(double q);

/// Interpolation exponent of the L^p bound: beta = (2/p)(p - 2q)/(q + 2)
/// for 1 <= 2q < p; always in (0, 1).
double gn_beta(double p, double q);

/// One evaluated inequality instance: lhs, the norm product without the
/// unnamed constant, and their ratio (the empirically observed constant).
struct InequalityTrial {
    std::string lemma;
    double lhs = 0.0;
    double rhs_factor = 0.0;
    double ratio = 0.0;  // infinity when rhs_factor = 0 with lhs > 0
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double horizon = std::numeric_limits<double>::quiet_NaN();
    int n = 0;
    std::string function_id;
    bool flag = true;  // explicit-constant check (sob1 only; true otherwise)
    double explicit_constant = std::numeric_limits<double>::quiet_NaN();
};

/// Coefficient with its cached classification data, so checker sweeps do not
/// re-run the refinement protocol per trial.
struct CoefficientProfile {
    DiffusionCoefficient coeff;
    Degeneracy classification = Degeneracy::NonDegenerate;
    double k = 0.0;  // sqrt of the reciprocal integral

    static CoefficientProfile analyze(const DiffusionCoefficient& coeff, int levels = 12);
};

/// ||u||_{L^p} <= c ||u||_{1,a} with the explicit proof constant
/// c = 4 max{k, sqrt(2)/2}; the flag records ratio <= c (1 + 1e-6).
InequalityTrial check_sob1(const CoefficientProfile& profile, const GridFunction& u, double p);

/// ||u||_inf <= c ||u||_{1,a}^alpha ||u||_{L^{2q}}^{1-alpha}.
InequalityTrial check_gn_linf(const CoefficientProfile& profile, const GridFunction& u, double q);

/// ||u||_{L^p} <= c ||u||_{1,a}^beta ||u||_{L^{2q}}^{1-beta}, 1 <= 2q < p.
InequalityTrial check_gn_lp(const CoefficientProfile& profile, const GridFunction& u, double p,
                            double q);

/// ||u||_{L^p(Q_T)} <= c T^{(5-p)/(3p)} ||u||_B, p in [1, 5].
InequalityTrial check_sob2(const CoefficientProfile& profile, const SpaceTimeFunction& u, double p);

/// ||u||_{L^{2p}(Q_T)} <= c T^{1/(2p)} ||u||_H, p >= 1.
InequalityTrial check_sob3(const CoefficientProfile& profile, const SpaceTimeFunction& u, double p);

enum class TestFamily { TrigPolynomial, PiecewiseBump, BoundarySpike };

std::string to_string(TestFamily family);

/// Parameter vector for one synthesized test function; space-time synthesis
/// appends an exponential-in-time decay rate as the last parameter.
struct FamilyParams {
    TestFamily family = TestFamily::TrigPolynomial;
    std::vector<double> raw;
};

/// Admissible parameter box (lower, upper) per family.
std::pair<std::vector<double>, std::vector<double>> family_box(TestFamily family, bool spacetime);

FamilyParams random_family_params(TestFamily family, bool spacetime, Rng& rng);
FamilyParams perturb_family_params(const FamilyParams& params, bool spacetime, double step,
                                   Rng& rng);

double family_value(const FamilyParams& params, double x);
GridFunction synthesize(const FamilyParams& params, MeshPtr mesh);
SpaceTimeFunction synthesize_spacetime(const FamilyParams& params, MeshPtr mesh,
                                       const TimeGrid& tg);
std::string family_id(const FamilyParams& params);

struct SearchOutcome {
    InequalityTrial worst;
    FamilyParams argmax;
    int trials = 0;
};

/// Random-restart hill climbing over a family's parameters, maximizing the
/// trial ratio. With a fixed seed the trial sequence for a smaller budget is
/// a prefix of the sequence for a larger one, so the worst ratio is monotone
/// in the iteration count.
SearchOutcome adversarial_search(const std::function<InequalityTrial(const FamilyParams&)>& objective,
                                 TestFamily family, bool spacetime, int iterations,
                                 std::uint64_t seed);

/// Worst-trial refinement probe: re-evaluates the argmax at a finer mesh and
/// reports the relative change.
struct StabilityProbe {
    InequalityTrial coarse;
    InequalityTrial fine;
    double relative_change = 0.0;
    bool stable = false;  // change below 10%
};

}  // namespace degenlab
