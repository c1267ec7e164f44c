#include "degenlab/norms.hpp"

#include <cmath>
#include <limits>

#include "degenlab/errors.hpp"

namespace degenlab {

namespace {

double seminorm_1a_sq(std::span<const double> values, const Mesh& mesh,
                      const DiffusionCoefficient& coeff) {
    double sum = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const double h = mesh.cell_width(c);
        const double d = (values[static_cast<std::size_t>(c + 1)] -
                          values[static_cast<std::size_t>(c)]) / h;
        sum += coeff(mesh.cell_midpoint(c)) * d * d * h;
    }
    return sum;
}

double l2_sq(std::span<const double> values, const Mesh& mesh) {
    double sum = 0.0;
    const auto w = mesh.weights();
    for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i] * values[i];
    return sum;
}

double flux_divergence_sq(std::span<const double> values, const Mesh& mesh,
                          const DiffusionCoefficient& coeff) {
    double sum = 0.0;
    double prev_flux = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const double h = mesh.cell_width(c);
        const double d = (values[static_cast<std::size_t>(c + 1)] -
                          values[static_cast<std::size_t>(c)]) / h;
        const double flux = coeff(mesh.cell_midpoint(c)) * d;
        if (c > 0) {
            const double w = mesh.weight(c);
            const double div = (flux - prev_flux) / w;
            sum += w * div * div;
        }
        prev_flux = flux;
    }
    return sum;
}

}  // namespace

double lp_norm(const GridFunction& u, double p) {
    if (std::isinf(p)) return linf_norm(u);
    if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be at least 1 (or infinity)");
    double sum = 0.0;
    const auto w = u.mesh->weights();
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        sum += w[i] * std::pow(std::abs(u.values[i]), p);
    }
    return std::pow(sum, 1.0 / p);
}

double l2_norm(const GridFunction& u) { return std::sqrt(l2_sq(u.values, *u.mesh)); }

double linf_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double seminorm_1a(const GridFunction& u, const DiffusionCoefficient& coeff) {
    return std::sqrt(seminorm_1a_sq(u.values, *u.mesh, coeff));
}

double norm_1a(const GridFunction& u, const DiffusionCoefficient& coeff) {
    return std::sqrt(l2_sq(u.values, *u.mesh) + seminorm_1a_sq(u.values, *u.mesh, coeff));
}

double flux_divergence_l2(const GridFunction& u, const DiffusionCoefficient& coeff) {
    return std::sqrt(flux_divergence_sq(u.values, *u.mesh, coeff));
}

double norm_2a(const GridFunction& u, const DiffusionCoefficient& coeff) {
    const double n1 = norm_1a(u, coeff);
    const double fd = flux_divergence_l2(u, coeff);
    return std::sqrt(n1 * n1 + fd * fd);
}

double b_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff) {
    const Mesh& mesh = *u.mesh;
    double sup_l2_sq = 0.0;
    double grad_integral = 0.0;
    double prev_semi_sq = 0.0;
    const double dt = u.time.dt();
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        sup_l2_sq = std::max(sup_l2_sq, l2_sq(s, mesh));
        const double semi_sq = seminorm_1a_sq(s, mesh, coeff);
        if (n > 0) grad_integral += 0.5 * dt * (prev_semi_sq + semi_sq);
        prev_semi_sq = semi_sq;
    }
    return std::sqrt(sup_l2_sq + 2.0 * grad_integral);
}

double h_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff) {
    if (u.time.steps < 2) {
        throw ConfigError("the strict-solution norm needs at least two time steps");
    }
    const Mesh& mesh = *u.mesh;
    const double dt = u.time.dt();
    double sup_energy = 0.0;
    double time_integral = 0.0;
    double prev_div_sq = 0.0;
    std::vector<double> diff(static_cast<std::size_t>(mesh.num_nodes()));
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        sup_energy = std::max(sup_energy, l2_sq(s, mesh) + seminorm_1a_sq(s, mesh, coeff));
        const double div_sq = flux_divergence_sq(s, mesh, coeff);
        if (n > 0) time_integral += 0.5 * dt * (prev_div_sq + div_sq);
        prev_div_sq = div_sq;
        if (n < u.time.steps) {
            const auto next = u.slice(n + 1);
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (next[i] - s[i]) / dt;
            time_integral += dt * l2_sq(diff, mesh);
        }
    }
    return std::sqrt(sup_energy + time_integral);
}

double h_hilbert_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff) {
    if (u.time.steps < 2) {
        throw ConfigError("the strict-solution norm needs at least two time steps");
    }
    const Mesh& mesh = *u.mesh;
    const double dt = u.time.dt();
    double integral = 0.0;
    double prev = 0.0;
    std::vector<double> diff(static_cast<std::size_t>(mesh.num_nodes()));
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        const double stationary =
            l2_sq(s, mesh) + seminorm_1a_sq(s, mesh, coeff) + flux_divergence_sq(s, mesh, coeff);
        if (n > 0) integral += 0.5 * dt * (prev + stationary);
        prev = stationary;
        if (n < u.time.steps) {
            const auto next = u.slice(n + 1);
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = (next[i] - s[i]) / dt;
            integral += dt * l2_sq(diff, mesh);
        }
    }
    return std::sqrt(integral);
}

double lp_qt_norm(const SpaceTimeFunction& u, double p) {
    if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be at least 1");
    const Mesh& mesh = *u.mesh;
    const auto w = mesh.weights();
    const double dt = u.time.dt();
    double integral = 0.0;
    double prev = 0.0;
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        double slab = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) slab += w[i] * std::pow(std::abs(s[i]), p);
        if (n > 0) integral += 0.5 * dt * (prev + slab);
        prev = slab;
    }
    return std::pow(integral, 1.0 / p);
}

double weighted_inner(const Mesh& mesh, std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size() || static_cast<int>(u.size()) != mesh.num_nodes()) {
        throw ShapeError("weighted inner product length mismatch");
    }
    double sum = 0.0;
    const auto w = mesh.weights();
    for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * u[i] * v[i];
    return sum;
}

double weighted_l2(const Mesh& mesh, std::span<const double> u) {
    return std::sqrt(weighted_inner(mesh, u, u));
}

NormReport compute_norm_report(const GridFunction& u, const DiffusionCoefficient& coeff,
                               std::span<const double> lp_exponents) {
    NormReport r;
    r.l2 = l2_norm(u);
    r.seminorm_1a = seminorm_1a(u, coeff);
    r.norm_1a = std::sqrt(r.l2 * r.l2 + r.seminorm_1a * r.seminorm_1a);
    r.norm_2a = norm_2a(u, coeff);
    r.linf = linf_norm(u);
    for (double p : lp_exponents) r.lp[p] = lp_norm(u, p);
    return r;
}

}  // namespace degenlab
