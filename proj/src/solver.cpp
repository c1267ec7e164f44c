#include "degenlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "degenlab/errors.hpp"
#include "degenlab/norms.hpp"
#include "degenlab/rng.hpp"

namespace degenlab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double legendre_p(int n, double x) {
    if (n < 0) throw DomainError("Legendre degree must be nonnegative");
    if (n == 0) return 1.0;
    if (n == 1) return x;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = next;
    }
    return p;
}

InitialDatum InitialDatum::legendre(int degree) {
    if (degree < 0) throw ConfigError("Legendre datum needs a nonnegative degree", "(A.1)");
    return InitialDatum([degree](double x) { return legendre_p(degree, x); },
                        "legendre(" + std::to_string(degree) + ")");
}

InitialDatum InitialDatum::sign() {
    return InitialDatum([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }, "sign");
}

InitialDatum InitialDatum::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw ConfigError("polynomial datum needs finite coefficients", "(A.1)");
    }
    return InitialDatum(
        [coeffs](double x) {
            double v = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
            return v;
        },
        "polynomial(deg=" + std::to_string(coeffs.size() - 1) + ")");
}

InitialDatum InitialDatum::nodal(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.size() < 2) {
        throw ConfigError("nodal datum needs matching nodes/values", "(A.1)");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) throw ConfigError("nodal datum nodes must increase", "(A.1)");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("nodal datum must be finite", "(A.1)");
    }
    return InitialDatum(
        [nodes, values](double x) {
            const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
            if (it == nodes.begin()) return values.front();
            if (it == nodes.end()) return values.back();
            const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
            const double t = (x - nodes[hi - 1]) / (nodes[hi] - nodes[hi - 1]);
            return (1.0 - t) * values[hi - 1] + t * values[hi];
        },
        "nodal(" + std::to_string(nodes.size()) + ")");
}

InitialDatum InitialDatum::custom(std::function<double(double)> f, std::string label) {
    return InitialDatum(std::move(f), std::move(label));
}

double InitialDatum::operator()(double x) const { return eval_(x); }

void ProblemSpec::validate(const Degeneracy& degeneracy) const {
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (bc.kind == BoundaryMode::Kind::Robin) {
        bc.robin.validate();
        if (degeneracy == Degeneracy::StronglyDegenerate) {
            throw ConfigError("a strongly degenerate problem needs the weighted Neumann mode",
                              "(A.5_SD)");
        }
    }
    const double sup = theta_sup(degeneracy);
    if (!(model.theta() < sup)) {
        throw ConfigError("growth exponent must stay below " + std::to_string(sup),
                          degeneracy == Degeneracy::StronglyDegenerate ? "(A.5_SD)" : "(A.5_WD)");
    }
    if (!std::isfinite(alpha.sup_abs(horizon))) {
        throw ConfigError("reaction field must be essentially bounded", "(A.2)");
    }
}

GridFunction sample_datum(const InitialDatum& u0, MeshPtr mesh) {
    return GridFunction::sample(std::move(mesh), [&u0](double x) { return u0(x); });
}

double effective_grading(const ProblemSpec& spec, const SolveParams& params) {
    if (params.grading > 0.0) return params.grading;
    return spec.coeff.vanishes_at_boundary() ? 2.0 : 1.0;
}

double stability_constant(const ProblemSpec& spec) {
    return std::exp((spec.model.declared_nu() + spec.alpha.sup_positive_part(spec.horizon)) *
                    spec.horizon);
}

namespace {

// Discrete screen for the H^1_a regularity claim: the weighted seminorm must
// be stable under restriction to every other node (a jump datum grows by
// about sqrt(2) per refinement and is rejected).
bool h1a_stable(const GridFunction& u, const DiffusionCoefficient& coeff) {
    const Mesh& mesh = *u.mesh;
    const int n = mesh.num_cells();
    if (n / 2 < 8 || n % 2 != 0) return true;
    MeshPtr coarse = make_mesh(n / 2, mesh.grading_exponent());
    std::vector<double> cv(static_cast<std::size_t>(n / 2) + 1);
    for (int i = 0; i <= n / 2; ++i) cv[static_cast<std::size_t>(i)] = u.values[static_cast<std::size_t>(2 * i)];
    const GridFunction uc(coarse, std::move(cv));
    const double semi_fine = seminorm_1a(u, coeff);
    const double semi_coarse = seminorm_1a(uc, coeff);
    const double floor = 1e-10 * (1.0 + l2_norm(u));
    if (semi_fine <= floor) return true;
    return semi_fine <= 1.25 * semi_coarse + floor;
}

struct SteppingDiagnostics {
    bool converged = true;
    int failed_step = -1;
    std::vector<int> picard_iterations;
    std::vector<std::vector<double>> residuals;
    std::vector<std::array<double, 2>> boundary_residuals;
    double min_value = std::numeric_limits<double>::infinity();
    double max_boundary_residual = 0.0;
};

// Implicit Euler with a per-step Picard fixed point, streaming slices into
// the sink. Diagnostics storage is optional so long runs stay lean.
SteppingDiagnostics run_time_stepping(const ProblemSpec& spec, const SolveParams& params,
                                      const GridFunction& u0,
                                      const std::function<void(int, std::span<const double>)>& sink,
                                      bool store_diagnostics) {
    const MeshPtr mesh = u0.mesh;
    const Mesh& m = *mesh;
    const int nodes = m.num_nodes();
    const TimeGrid tg(spec.horizon, params.m);
    const double dt = tg.dt();

    const double alpha_plus = spec.alpha.sup_positive_part(spec.horizon);
    if (!(dt * alpha_plus < 0.5)) {
        throw ConfigError("step size violates dt * ||alpha+||_inf < 1/2; increase the step count");
    }

    const bool nonlinear = spec.model.kind() != ModelKind::Zero;
    const bool alpha_static = spec.alpha.time_independent();

    SteppingDiagnostics diag;
    if (store_diagnostics) {
        diag.picard_iterations.reserve(static_cast<std::size_t>(params.m));
        diag.residuals.reserve(static_cast<std::size_t>(params.m));
        diag.boundary_residuals.reserve(static_cast<std::size_t>(params.m));
    }

    std::vector<double> alpha_slice(static_cast<std::size_t>(nodes));
    auto fill_alpha = [&](double t) {
        for (int i = 0; i < nodes; ++i) {
            alpha_slice[static_cast<std::size_t>(i)] = spec.alpha(t, m.node(i));
        }
    };

    std::optional<OperatorAssembly> op;
    if (alpha_static) {
        fill_alpha(0.0);
        op.emplace(mesh, spec.coeff, alpha_slice, spec.bc);
    }

    GridFunction u_prev = u0;
    for (double v : u_prev.values) diag.min_value = std::min(diag.min_value, v);
    sink(0, u_prev.values);

    std::vector<double> source(static_cast<std::size_t>(nodes));
    std::vector<double> diff(static_cast<std::size_t>(nodes));

    for (int step = 0; step < params.m; ++step) {
        const double t1 = tg.node(step + 1);
        if (!alpha_static) {
            fill_alpha(t1);
            op.emplace(mesh, spec.coeff, alpha_slice, spec.bc);
        }

        GridFunction v = params.start == PicardStart::PreviousSlice ? u_prev
                                                                    : GridFunction::zero(mesh);
        std::vector<double> step_residuals;
        int iters = 0;
        bool step_converged = false;
        const int sweeps = nonlinear ? params.picard_max : 1;
        for (int it = 0; it < sweeps; ++it) {
            for (int i = 0; i < nodes; ++i) {
                const std::size_t k = static_cast<std::size_t>(i);
                double s = nonlinear ? spec.model(t1, m.node(i), v.values[k]) : 0.0;
                if (spec.forcing) s += (*spec.forcing)(t1, m.node(i));
                source[k] = s;
            }
            GridFunction v_new = op->implicit_step(u_prev, dt, source);
            for (int i = 0; i < nodes; ++i) {
                diff[static_cast<std::size_t>(i)] =
                    v_new.values[static_cast<std::size_t>(i)] - v.values[static_cast<std::size_t>(i)];
            }
            const double r = nonlinear ? weighted_l2(m, diff) : 0.0;
            v = std::move(v_new);
            ++iters;
            if (store_diagnostics) step_residuals.push_back(r);
            if (!nonlinear || r < params.picard_tol) {
                step_converged = true;
                break;
            }
        }

        // Boundary relation residual from the half-cell flux balance, with
        // the source re-evaluated at the accepted iterate.
        std::array<double, 2> bres{0.0, 0.0};
        {
            const int n = m.num_cells();
            auto reconstruct = [&](bool left) {
                const int node = left ? 0 : n;
                const int cell = left ? 0 : n - 1;
                const std::size_t k = static_cast<std::size_t>(node);
                const double fc = spec.coeff(m.cell_midpoint(cell)) / m.cell_width(cell);
                const double inner_flux =
                    left ? fc * (v.values[1] - v.values[0])
                         : fc * (v.values[static_cast<std::size_t>(n)] -
                                 v.values[static_cast<std::size_t>(n - 1)]);
                double s = nonlinear ? spec.model(t1, m.node(node), v.values[k]) : 0.0;
                if (spec.forcing) s += (*spec.forcing)(t1, m.node(node));
                const double balance = (v.values[k] - u_prev.values[k]) / dt -
                                       alpha_slice[k] * v.values[k] - s;
                // u_t = (F_in - F_trace)/w + alpha u + f at the left node,
                // mirrored on the right.
                return left ? inner_flux - m.weight(node) * balance
                            : inner_flux + m.weight(node) * balance;
            };
            const bool robin = spec.bc.kind == BoundaryMode::Kind::Robin;
            const double scale = 1.0 + linf_norm(v);
            if (robin && spec.bc.robin.beta1 == 0.0) {
                bres[0] = std::abs(v.values[0]) / scale;
            } else {
                const double f_minus = reconstruct(true);
                bres[0] = robin ? std::abs(spec.bc.robin.beta0 * v.values[0] +
                                           spec.bc.robin.beta1 * f_minus) /
                                      ((std::abs(spec.bc.robin.beta0) +
                                        std::abs(spec.bc.robin.beta1)) *
                                       scale)
                                : std::abs(f_minus) / scale;
            }
            if (robin && spec.bc.robin.gamma1 == 0.0) {
                bres[1] = std::abs(v.values[static_cast<std::size_t>(m.num_cells())]) / scale;
            } else {
                const double f_plus = reconstruct(false);
                bres[1] = robin ? std::abs(spec.bc.robin.gamma0 *
                                               v.values[static_cast<std::size_t>(m.num_cells())] +
                                           spec.bc.robin.gamma1 * f_plus) /
                                      ((std::abs(spec.bc.robin.gamma0) +
                                        std::abs(spec.bc.robin.gamma1)) *
                                       scale)
                                : std::abs(f_plus) / scale;
            }
        }
        diag.max_boundary_residual =
            std::max({diag.max_boundary_residual, bres[0], bres[1]});

        if (store_diagnostics) {
            diag.picard_iterations.push_back(iters);
            diag.residuals.push_back(std::move(step_residuals));
            diag.boundary_residuals.push_back(bres);
        }

        if (!step_converged) {
            diag.converged = false;
            diag.failed_step = step;
            // Keep the shape intact so callers can inspect the partial run.
            for (int rest = step + 1; rest <= params.m; ++rest) sink(rest, v.values);
            return diag;
        }

        for (double val : v.values) diag.min_value = std::min(diag.min_value, val);
        sink(step + 1, v.values);
        u_prev = std::move(v);
    }
    return diag;
}

SolveResult solve_on_datum(const ProblemSpec& spec, const SolveParams& params,
                           const GridFunction& u0) {
    SolveResult result;
    result.solution = SpaceTimeFunction(TimeGrid(spec.horizon, params.m), u0.mesh);
    auto sink = [&result](int n, std::span<const double> values) {
        result.solution.set_slice(n, values);
    };
    SteppingDiagnostics diag = run_time_stepping(spec, params, u0, sink, true);
    result.converged = diag.converged;
    result.failed_step = diag.failed_step;
    result.picard_iterations = std::move(diag.picard_iterations);
    result.residuals = std::move(diag.residuals);
    result.boundary_residuals = std::move(diag.boundary_residuals);
    result.min_value = diag.min_value;
    result.max_boundary_residual = diag.max_boundary_residual;
    result.b_norm = b_norm(result.solution, spec.coeff);
    result.h_norm = params.m >= 2 ? h_norm(result.solution, spec.coeff) : kNaN;
    return result;
}

// Quick conformance screen: the declared one-sided constant must dominate
// the sampled one before it is used in a stability certificate.
void ensure_declared_nu(const ProblemSpec& spec) {
    const A3Report report = validate_A3(spec.model, 4000, spec.horizon, 0x5eed0001ULL, 10.0);
    for (const auto& b : report.bounds) {
        if (b.bound == "one_sided" && !b.holds) {
            throw ConfigError("sampled one-sided constant exceeds the declared nu", "(A.3)");
        }
    }
}

}  // namespace

SolveResult solve_strict(const ProblemSpec& spec, const SolveParams& params) {
    if (spec.claim != RegularityClaim::H1a) {
        throw ConfigError("a strict solve needs the H^1_a regularity claim");
    }
    const MeshPtr mesh = make_mesh(params.n, effective_grading(spec, params));
    const GridFunction u0 = sample_datum(spec.u0, mesh);
    if (params.check_h1a_claim && !h1a_stable(u0, spec.coeff)) {
        throw ConfigError("initial datum fails the discrete H^1_a stability screen");
    }
    return solve_on_datum(spec, params, u0);
}

SolveResult solve_strict_with_datum(const ProblemSpec& spec, const SolveParams& params,
                                    const GridFunction& u0, bool enforce_claim) {
    if (u0.mesh->num_cells() != params.n) {
        throw ShapeError("datum mesh does not match the requested resolution");
    }
    if (enforce_claim && params.check_h1a_claim && !h1a_stable(u0, spec.coeff)) {
        throw ConfigError("initial datum fails the discrete H^1_a stability screen");
    }
    return solve_on_datum(spec, params, u0);
}

StrongSolveResult solve_strong(const ProblemSpec& spec, const SolveParams& params,
                               std::span<const int> levels, double certificate_slack) {
    if (levels.size() < 2) throw ConfigError("the approximation run needs at least two levels");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (!(levels[i] > levels[i - 1])) {
            throw ConfigError("approximation levels must strictly increase");
        }
    }
    if (spec.model.kind() != ModelKind::Zero) ensure_declared_nu(spec);

    const MeshPtr mesh = make_mesh(params.n, effective_grading(spec, params));
    const GridFunction u0 = sample_datum(spec.u0, mesh);

    const std::vector<double> zero_alpha(static_cast<std::size_t>(mesh->num_nodes()), 0.0);
    const OperatorAssembly pure_diffusion(mesh, spec.coeff, zero_alpha, spec.bc);
    const SpectralBasis basis = SpectralBasis::compute(pure_diffusion);

    StrongSolveResult out;
    out.levels.assign(levels.begin(), levels.end());
    out.stability_constant = stability_constant(spec);

    std::vector<GridFunction> data;
    for (int k : levels) {
        bool clamped = false;
        GridFunction uk = regularize_datum(u0, basis, k, &clamped);
        if (clamped) {
            out.clamped_levels = true;
            std::cerr << "note: regularization level " << k << " clamped to the basis size "
                      << basis.size() << "\n";
        }
        std::vector<double> d(u0.values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = uk.values[i] - u0.values[i];
        out.initial_data_errors.push_back(weighted_l2(*mesh, d));
        data.push_back(std::move(uk));
    }

    for (const auto& uk : data) {
        SolveResult r = solve_strict_with_datum(spec, params, uk, false);
        if (!r.converged) {
            throw ConvergenceError("strict solve failed to converge at level " +
                                   std::to_string(out.levels[out.approximants.size()]));
        }
        out.approximants.push_back(std::move(r));
    }

    for (std::size_t j = 0; j + 1 < data.size(); ++j) {
        const SpaceTimeFunction diff =
            out.approximants[j].solution - out.approximants[j + 1].solution;
        const double gap = b_norm(diff, spec.coeff);
        out.cauchy_gaps.push_back(gap);
        std::vector<double> d(data[j].values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = data[j].values[i] - data[j + 1].values[i];
        StabilityCertificate cert;
        cert.level_lo = out.levels[j];
        cert.level_hi = out.levels[j + 1];
        cert.gap_b = gap;
        cert.datum_gap_l2 = weighted_l2(*mesh, d);
        cert.bound = (1.0 + certificate_slack) * out.stability_constant * cert.datum_gap_l2;
        cert.holds = gap <= cert.bound;
        out.certificates.push_back(cert);
    }

    out.datum_errors_strictly_decreasing = true;
    for (std::size_t j = 1; j < out.initial_data_errors.size(); ++j) {
        if (!(out.initial_data_errors[j] < out.initial_data_errors[j - 1])) {
            out.datum_errors_strictly_decreasing = false;
        }
    }
    out.gaps_decreasing = true;
    for (std::size_t j = 1; j < out.cauchy_gaps.size(); ++j) {
        if (!(out.cauchy_gaps[j] < out.cauchy_gaps[j - 1])) out.gaps_decreasing = false;
    }
    bool certs = true;
    for (const auto& c : out.certificates) certs = certs && c.holds;
    out.certified = certs && out.gaps_decreasing;
    out.limit = out.approximants.back().solution;
    return out;
}

std::pair<double, double> stability_gap(const ProblemSpec& spec, const GridFunction& u0,
                                        const GridFunction& v0, const SolveParams& params) {
    if (spec.model.kind() != ModelKind::Zero) ensure_declared_nu(spec);
    const SolveResult ru = solve_strict_with_datum(spec, params, u0);
    const SolveResult rv = solve_strict_with_datum(spec, params, v0);
    if (!ru.converged || !rv.converged) {
        throw ConvergenceError("stability solve failed to converge");
    }
    const SpaceTimeFunction diff = ru.solution - rv.solution;
    std::vector<double> d(u0.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = u0.values[i] - v0.values[i];
    const double lhs = b_norm(diff, spec.coeff);
    const double rhs = stability_constant(spec) * weighted_l2(*u0.mesh, d);
    return {lhs, rhs};
}

std::pair<double, double> stability_gap(const ProblemSpec& spec, const InitialDatum& u0,
                                        const InitialDatum& v0, const SolveParams& params) {
    const MeshPtr mesh = make_mesh(params.n, effective_grading(spec, params));
    return stability_gap(spec, sample_datum(u0, mesh), sample_datum(v0, mesh), params);
}

namespace {

struct ErrorAccumulator {
    const std::function<double(double, double)>& exact;
    const DiffusionCoefficient& coeff;
    const TimeGrid& tg;
    const Mesh& mesh;
    double sup_l2_sq = 0.0;
    double grad_integral = 0.0;
    double prev_semi_sq = 0.0;
    double final_l2 = 0.0;
    std::vector<double> err;

    void operator()(int n, std::span<const double> values) {
        const double t = tg.node(n);
        err.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            err[i] = values[i] - exact(t, mesh.node(static_cast<int>(i)));
        }
        double l2sq = 0.0;
        const auto w = mesh.weights();
        for (std::size_t i = 0; i < err.size(); ++i) l2sq += w[i] * err[i] * err[i];
        sup_l2_sq = std::max(sup_l2_sq, l2sq);
        double semi_sq = 0.0;
        for (int c = 0; c < mesh.num_cells(); ++c) {
            const double h = mesh.cell_width(c);
            const double d = (err[static_cast<std::size_t>(c + 1)] -
                              err[static_cast<std::size_t>(c)]) / h;
            semi_sq += coeff(mesh.cell_midpoint(c)) * d * d * h;
        }
        if (n > 0) grad_integral += 0.5 * tg.dt() * (prev_semi_sq + semi_sq);
        prev_semi_sq = semi_sq;
        if (n == tg.steps) final_l2 = std::sqrt(l2sq);
    }

    double b_error() const { return std::sqrt(sup_l2_sq + 2.0 * grad_integral); }
};

ConvergenceRow run_error_case(const ProblemSpec& spec, int n, int m, double picard_tol,
                              const std::function<double(double, double)>& exact) {
    SolveParams params;
    params.n = n;
    params.m = m;
    params.picard_tol = picard_tol;
    const MeshPtr mesh = make_mesh(n, effective_grading(spec, params));
    const GridFunction u0 = sample_datum(spec.u0, mesh);
    const TimeGrid tg(spec.horizon, m);
    ErrorAccumulator acc{exact, spec.coeff, tg, *mesh, 0.0, 0.0, 0.0, 0.0, {}};
    run_time_stepping(spec, params, u0, std::ref(acc), false);
    ConvergenceRow row;
    row.n = n;
    row.m = m;
    row.l2_final_error = acc.final_l2;
    row.b_error = acc.b_error();
    return row;
}

double observed_order(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) return 0.0;
    const auto& a = rows[rows.size() - 2];
    const auto& b = rows.back();
    if (!(a.l2_final_error > 0.0) || !(b.l2_final_error > 0.0)) return 0.0;
    return std::log2(a.l2_final_error / b.l2_final_error);
}

}  // namespace

ConvergenceStudy convergence_study(ExactCase exact_case, int legendre_degree,
                                   std::span<const int> mesh_sizes,
                                   std::span<const int> temporal_steps, double horizon,
                                   double picard_tol) {
    ProblemSpec spec;
    std::function<double(double, double)> exact;
    if (exact_case == ExactCase::Legendre) {
        const int deg = legendre_degree;
        const double rate = static_cast<double>(deg) * (deg + 1);
        spec.coeff = DiffusionCoefficient::power_law(1.0);
        spec.bc = BoundaryMode::weighted_neumann();
        spec.model = NemytskiiModel::zero();
        spec.alpha = SpaceTimeField::constant(0.0);
        spec.horizon = horizon;
        spec.u0 = InitialDatum::legendre(deg);
        exact = [deg, rate](double t, double x) {
            return std::exp(-rate * t) * legendre_p(deg, x);
        };
    } else {
        // Manufactured weakly degenerate case: a = (1 - x^2)^{1/2},
        // u*(t, x) = e^{-t} (1 - x^2)^2, Robin data consistent with the
        // vanishing traces of u* and of its flux, and the closed-form source
        // s = u*_t - (a u*_x)_x folded into the forcing term.
        spec.coeff = DiffusionCoefficient::power_law(0.5);
        spec.bc = BoundaryMode::robin_bc(RobinBC{1.0, -1.0, 1.0, 1.0});
        spec.model = NemytskiiModel::zero();
        spec.alpha = SpaceTimeField::constant(0.0);
        spec.horizon = horizon;
        spec.u0 = InitialDatum::polynomial({1.0, 0.0, -2.0, 0.0, 1.0});  // (1 - x^2)^2
        exact = [](double t, double x) {
            const double s = 1.0 - x * x;
            return std::exp(-t) * s * s;
        };
        spec.forcing = [](double t, double x) {
            const double s = 1.0 - x * x;
            const double a = std::sqrt(std::max(s, 0.0));
            return -std::exp(-t) * (s * s + a * (16.0 * x * x - 4.0));
        };
    }

    ConvergenceStudy study;
    for (int n : mesh_sizes) {
        study.spatial.push_back(run_error_case(spec, n, n * n, picard_tol, exact));
    }
    if (!mesh_sizes.empty() && !temporal_steps.empty()) {
        const int n_fine = *std::max_element(mesh_sizes.begin(), mesh_sizes.end());
        for (int m : temporal_steps) {
            study.temporal.push_back(run_error_case(spec, n_fine, m, picard_tol, exact));
        }
    }
    study.spatial_order = observed_order(study.spatial);
    study.temporal_order = observed_order(study.temporal);
    return study;
}

}  // namespace degenlab
