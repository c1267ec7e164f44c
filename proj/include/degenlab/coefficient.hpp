#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace degenlab {

enum class CoefficientKind { PowerLaw, Tabulated, ConstantOne };
enum class Degeneracy { WeaklyDegenerate, StronglyDegenerate, NonDegenerate };
enum class ConditionStatus { Holds, Fails, Indeterminate };

std::string to_string(Degeneracy d);
std::string to_string(ConditionStatus s);

/// The diffusion coefficient a on [-1, 1]. Power-law coefficients are
/// a(x) = (1 - x^2)^gamma; tabulated ones interpolate samples piecewise
/// linearly; the constant-one mode is a non-degenerate sanity coefficient
/// (it keeps a(+-1) = 1 and is always flagged as such).
class DiffusionCoefficient {
public:
    static DiffusionCoefficient power_law(double gamma);
    static DiffusionCoefficient tabulated(std::vector<double> nodes, std::vector<double> values);
    static DiffusionCoefficient constant_one();

    CoefficientKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    std::span<const double> sample_nodes() const { return nodes_; }
    std::span<const double> sample_values() const { return values_; }

    /// a(x); throws DomainError for x outside [-1, 1].
    double operator()(double x) const;

    /// True when a(-1) = a(1) = 0, i.e. the coefficient can satisfy the
    /// degeneracy part of the standing assumptions.
    bool vanishes_at_boundary() const;

    /// Largest |a(x-h) - 2a(x) + a(x+h)| / h over the sample grid; a cheap
    /// smoothness screen for tabulated inputs (0 for closed-form kinds).
    double roughness_indicator() const;

    std::string describe() const;

private:
    DiffusionCoefficient() = default;

    CoefficientKind kind_ = CoefficientKind::ConstantOne;
    double gamma_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

double eval_a(const DiffusionCoefficient& coeff, double x);

/// xi_a(x) = integral of 1/a over [0, x], by adaptive quadrature. The point
/// must lie strictly inside (-1, 1) for degenerate coefficients; at +-1 a
/// strongly degenerate coefficient makes the integral divergent.
double xi_a(const DiffusionCoefficient& coeff, double x, double rel_tol = 1e-12);

/// Trend of a truncation-refinement sequence I_0, I_1, ... on shrinking
/// cutoffs. Divergent when the last values keep growing by the growth
/// factor; convergent when the last successive differences decay
/// geometrically, in which case the geometric tail is extrapolated.
enum class RefinementTrend { Convergent, Divergent, Indeterminate };

struct RefinementDecision {
    RefinementTrend trend = RefinementTrend::Indeterminate;
    double limit = 0.0;            // extrapolated limit (infinity when divergent)
    double last_diff_ratio = 0.0;  // ratio of the last two successive differences
};

RefinementDecision judge_refinement(std::span<const double> values,
                                    double growth_factor = 1.05,
                                    double max_diff_ratio = 0.997,
                                    double abs_tol = 1e-13);

struct DegeneracyReport {
    Degeneracy classification = Degeneracy::NonDegenerate;
    double reciprocal_integral = 0.0;  // integral of 1/a (infinity when divergent)
    double k_constant = 0.0;           // sqrt of the reciprocal integral
    bool satisfies_A4 = true;          // a > 0 inside and a(+-1) = 0
    std::map<double, double> xi_lq_norms;
    std::vector<double> refinement_deltas;
    std::vector<double> refinement_values;
};

/// Classifies weak vs strong degeneracy by integrating 1/a on the truncated
/// domains [-1 + delta_j, 1 - delta_j], delta_j = 0.1 * 2^-j. Throws
/// IndeterminateError when the refinement trend is ambiguous.
DegeneracyReport classify(const DiffusionCoefficient& coeff, int refinement_levels = 12);

struct A5SDCheck {
    ConditionStatus status = ConditionStatus::Indeterminate;
    double q_theta = 0.0;
    double xi_lq_norm = 0.0;  // ||xi_a||_{L^{q_theta}} (infinity when divergent)
    std::vector<double> refinement_values;
};

/// q_theta = max{(1 + theta)/(3 - theta), 2 theta - 1} for theta in [1, 3).
double a5_sd_exponent(double theta);

/// Tests xi_a in L^{q_theta}(-1, 1) with the same refinement protocol as
/// classify().
A5SDCheck check_A5_SD(const DiffusionCoefficient& coeff, double theta,
                      int refinement_levels = 12);

}  // namespace degenlab
