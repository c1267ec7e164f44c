#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degenlab/coefficient.hpp"
#include "degenlab/fields.hpp"
#include "degenlab/mesh.hpp"

namespace degenlab {

enum class ModelKind { Zero, PurePower, PaperExample };

/// Reaction nonlinearity f(t, x, u) with its declared growth and one-sided
/// constants. The built-in family:
///   Zero          f = 0
///   PurePower     f = sign * g0 * |u|^{theta-1} u
///   PaperExample  f = c(t,x) min{|u|^{theta-1}, 1} u - |u|^{theta-1} u
/// The declared nu is chosen so that one constant covers the one-sided,
/// local-Lipschitz and time-derivative bounds simultaneously (a pure-power
/// sink is one-sided with 0, but its Lipschitz bound still needs theta*g0).
class NemytskiiModel {
public:
    static NemytskiiModel zero();
    static NemytskiiModel pure_power(double g0, double theta, int sign);
    static NemytskiiModel paper_example(double theta, SpaceTimeField c);

    double operator()(double t, double x, double u) const;

    ModelKind kind() const { return kind_; }
    double theta() const { return theta_; }
    double growth_g0() const { return g0_; }
    double declared_nu() const { return nu_; }
    const SpaceTimeField& coefficient() const { return c_; }
    std::string describe() const;

private:
    NemytskiiModel() : c_(SpaceTimeField::constant(0.0)) {}

    ModelKind kind_ = ModelKind::Zero;
    double theta_ = 1.0;
    double g0_ = 0.0;
    double nu_ = 0.0;
    int sign_ = -1;
    SpaceTimeField c_;
};

double eval_f(const NemytskiiModel& model, double t, double x, double u);

/// theta_sup admitted by the growth assumption: 4 in the weakly degenerate
/// regime, 3 in the strongly degenerate one.
double theta_sup(Degeneracy degeneracy);

/// Superposition map phi(u)(t, x) = f(t, x, u(t, x)); preserves the grids.
SpaceTimeFunction apply_phi(const NemytskiiModel& model, const SpaceTimeFunction& u);

struct A3BoundCheck {
    std::string bound;
    double worst_margin = 0.0;  // min over samples of (rhs - lhs)/(1 + |rhs|)
    double t = 0.0, x = 0.0, u = 0.0, v = 0.0;
    bool holds = true;
};

struct A3Report {
    std::vector<A3BoundCheck> bounds;
    bool conforming = true;
    int samples = 0;
    double box_radius = 0.0;
};

/// Monte-Carlo validation of the four growth/monotonicity bounds against the
/// model's declared constants, over (t, x, u, v) in [0,T] x [-1,1] x [-U,U]^2.
/// The time-derivative bound uses centered differences with step 1e-5.
A3Report validate_A3(const NemytskiiModel& model, int sample_budget, double horizon = 1.0,
                     std::uint64_t seed = 0, double box_radius = 10.0);

struct PhiBound {
    double norm = 0.0;   // ||phi(u)||_{L^{1+1/theta}(Q_T)}
    double bound = 0.0;  // C T^{(4-theta)/3} ||u||_B^{theta+1}, on the power 1+1/theta
    bool holds = true;
};

/// Calibrates the constant of the superposition growth bound as 1.1x the
/// largest ratio over a seeded corpus, for later regression checks.
double phi_growth_calibration(const NemytskiiModel& model, const DiffusionCoefficient& coeff,
                              MeshPtr mesh, double horizon, int time_steps, std::uint64_t seed,
                              int trials);

/// ||phi(u)||_{L^{1+1/theta}(Q_T)} with the calibrated growth flag:
/// norm^{1+1/theta} <= C T^{(4-theta)/3} ||u||_B^{theta+1}.
PhiBound phi_l1theta_norm(const NemytskiiModel& model, const DiffusionCoefficient& coeff,
                          const SpaceTimeFunction& u, double calibrated_constant);

/// ||phi(u) - phi(v)||_{L^{1+1/theta}(Q_T)} / ||u - v||_B; u must differ
/// from v.
double lipschitz_ratio(const NemytskiiModel& model, const DiffusionCoefficient& coeff,
                       const SpaceTimeFunction& u, const SpaceTimeFunction& v);

}  // namespace degenlab
