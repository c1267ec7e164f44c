#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "degenlab/coefficient.hpp"
#include "degenlab/diffusion_operator.hpp"
#include "degenlab/fields.hpp"
#include "degenlab/mesh.hpp"
#include "degenlab/nemytskii.hpp"
#include "degenlab/spectral.hpp"

namespace degenlab {

/// Mesh-independent initial datum, evaluable on any resolution.
class InitialDatum {
public:
    static InitialDatum legendre(int degree);
    static InitialDatum sign();
    static InitialDatum polynomial(std::vector<double> coeffs);
    static InitialDatum nodal(std::vector<double> nodes, std::vector<double> values);
    static InitialDatum custom(std::function<double(double)> f, std::string label);

    double operator()(double x) const;
    std::string describe() const { return label_; }

private:
    InitialDatum(std::function<double(double)> f, std::string label)
        : eval_(std::move(f)), label_(std::move(label)) {}

    std::function<double(double)> eval_;
    std::string label_;
};

/// Legendre polynomial P_n and its derivative (three-term recurrence).
double legendre_p(int n, double x);

enum class RegularityClaim { H1a, L2Only };

/// Full problem instance: coefficient, boundary mode, reaction field,
/// nonlinearity, horizon and initial datum.
struct ProblemSpec {
    DiffusionCoefficient coeff = DiffusionCoefficient::constant_one();
    BoundaryMode bc = BoundaryMode::weighted_neumann();
    SpaceTimeField alpha = SpaceTimeField::constant(0.0);
    NemytskiiModel model = NemytskiiModel::zero();
    double horizon = 1.0;
    InitialDatum u0 = InitialDatum::polynomial({0.0});
    RegularityClaim claim = RegularityClaim::H1a;
    /// Additive forcing used by manufactured-solution runs; not part of the
    /// serialized configuration surface.
    std::optional<std::function<double(double, double)>> forcing;

    /// Cross-invariants: boundary mode versus degeneracy, growth exponent
    /// versus theta_sup, bounded reaction field. Needs the classification of
    /// the coefficient. Throws ConfigError naming the violated assumption.
    void validate(const Degeneracy& degeneracy) const;
};

enum class PicardStart { PreviousSlice, Zero };

struct SolveParams {
    int n = 256;
    int m = 512;
    double grading = 0.0;  // 0 = automatic: 2 for degenerate coefficients, 1 otherwise
    double picard_tol = 1e-10;
    int picard_max = 50;
    PicardStart start = PicardStart::PreviousSlice;
    bool check_h1a_claim = true;
};

struct SolveResult {
    SpaceTimeFunction solution;
    double b_norm = 0.0;
    double h_norm = 0.0;  // NaN when m < 2
    bool converged = true;
    int failed_step = -1;
    std::vector<int> picard_iterations;             // per step
    std::vector<std::vector<double>> residuals;     // per step, per sweep
    std::vector<std::array<double, 2>> boundary_residuals;  // per step, at -1 and +1
    double min_value = 0.0;
    double max_boundary_residual = 0.0;
};

/// Strict solve: implicit Euler in time with a Picard fixed point on the
/// resolvent at every step. Requires the H^1_a regularity claim and
/// dt ||alpha^+||_inf < 1/2.
SolveResult solve_strict(const ProblemSpec& spec, const SolveParams& params);

/// Variant with a caller-provided nodal datum on a caller-built mesh (the
/// datum must live on a mesh with params.n cells and matching grading).
SolveResult solve_strict_with_datum(const ProblemSpec& spec, const SolveParams& params,
                                    const GridFunction& u0, bool enforce_claim = true);

GridFunction sample_datum(const InitialDatum& u0, MeshPtr mesh);

/// Effective grading for a coefficient when params.grading is automatic.
double effective_grading(const ProblemSpec& spec, const SolveParams& params);

/// e^{(nu + ||alpha^+||_inf) T}.
double stability_constant(const ProblemSpec& spec);

struct StabilityCertificate {
    int level_lo = 0, level_hi = 0;
    double gap_b = 0.0;        // ||u_j - u_k||_B
    double datum_gap_l2 = 0.0;  // ||u0_j - u0_k||_{L^2}
    double bound = 0.0;        // (1 + slack) C_T datum_gap
    bool holds = false;
};

struct StrongSolveResult {
    std::vector<int> levels;
    std::vector<SolveResult> approximants;
    std::vector<double> initial_data_errors;  // ||u0_k - u0||_{L^2} per level
    std::vector<double> cauchy_gaps;          // consecutive ||u_j - u_k||_B
    std::vector<StabilityCertificate> certificates;
    SpaceTimeFunction limit;  // finest-level solution
    double stability_constant = 1.0;
    bool datum_errors_strictly_decreasing = false;
    bool gaps_decreasing = false;
    bool certified = false;
    bool clamped_levels = false;
};

/// Strong solution by approximation: spectrally regularized data, one strict
/// solve per level, Cauchy gaps and per-pair stability certificates
/// gap <= (1 + slack) C_T (datum gap). The run is certified when every
/// certificate holds and the gaps decrease.
StrongSolveResult solve_strong(const ProblemSpec& spec, const SolveParams& params,
                               std::span<const int> levels, double certificate_slack = 0.05);

/// Two strict solves from different data; returns
/// (||u - v||_B, C_T ||u0 - v0||_{L^2}).
std::pair<double, double> stability_gap(const ProblemSpec& spec, const GridFunction& u0,
                                        const GridFunction& v0, const SolveParams& params);
std::pair<double, double> stability_gap(const ProblemSpec& spec, const InitialDatum& u0,
                                        const InitialDatum& v0, const SolveParams& params);

enum class ExactCase { Legendre, Manufactured };

struct ConvergenceRow {
    int n = 0, m = 0;
    double l2_final_error = 0.0;
    double b_error = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> spatial;   // m proportional to n^2
    std::vector<ConvergenceRow> temporal;  // fixed fine n
    double spatial_order = 0.0;            // log2 ratio of the finest pair
    double temporal_order = 0.0;
};

/// Error table against a known solution: the Legendre eigenpair decay on the
/// strongly degenerate benchmark, or a manufactured weakly degenerate case
/// with Robin data consistent with the manufactured traces.
ConvergenceStudy convergence_study(ExactCase exact, int legendre_degree,
                                   std::span<const int> mesh_sizes,
                                   std::span<const int> temporal_steps, double horizon,
                                   double picard_tol = 1e-10);

}  // namespace degenlab
