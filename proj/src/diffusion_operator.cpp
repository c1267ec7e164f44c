#include "degenlab/diffusion_operator.hpp"

#include <cmath>

#include "degenlab/errors.hpp"

namespace degenlab {

void RobinBC::validate() const {
    if (beta0 * beta0 + beta1 * beta1 <= 0.0 || gamma0 * gamma0 + gamma1 * gamma1 <= 0.0) {
        throw ConfigError("Robin coefficients must not vanish simultaneously", "(A.5_WD)");
    }
    if (beta0 * beta1 > 0.0 || gamma0 * gamma1 < 0.0) {
        throw ConfigError("Robin sign conditions beta0*beta1 <= 0 and gamma0*gamma1 >= 0", "(A.5_WD)");
    }
}

OperatorAssembly::OperatorAssembly(MeshPtr mesh, const DiffusionCoefficient& coeff,
                                   std::span<const double> alpha_slice, const BoundaryMode& bc)
    : mesh_(std::move(mesh)), coeff_(coeff), bc_(bc) {
    const int n = mesh_->num_cells();
    if (static_cast<int>(alpha_slice.size()) != n + 1) {
        throw ShapeError("reaction slice does not match the mesh");
    }
    if (bc_.kind == BoundaryMode::Kind::Robin) {
        bc_.robin.validate();
        if (coeff_.kind() == CoefficientKind::PowerLaw && coeff_.gamma() >= 1.0) {
            throw ConfigError("a strongly degenerate coefficient only admits the weighted Neumann mode",
                              "(A.5_SD)");
        }
    }
    alpha_.assign(alpha_slice.begin(), alpha_slice.end());
    flux_coeff_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        flux_coeff_[static_cast<std::size_t>(c)] =
            coeff_(mesh_->cell_midpoint(c)) / mesh_->cell_width(c);
    }
    sub_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    diag_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    super_.assign(static_cast<std::size_t>(n) + 1, 0.0);

    for (int i = 1; i < n; ++i) {
        const double wi = mesh_->weight(i);
        const double fl = flux_coeff_[static_cast<std::size_t>(i - 1)];
        const double fr = flux_coeff_[static_cast<std::size_t>(i)];
        sub_[static_cast<std::size_t>(i)] = fl / wi;
        diag_[static_cast<std::size_t>(i)] = -(fl + fr) / wi + alpha_[static_cast<std::size_t>(i)];
        super_[static_cast<std::size_t>(i)] = fr / wi;
    }

    const bool robin = bc_.kind == BoundaryMode::Kind::Robin;
    pinned_left_ = robin && bc_.robin.beta1 == 0.0;
    pinned_right_ = robin && bc_.robin.gamma1 == 0.0;

    if (pinned_left_) {
        sub_[1] = 0.0;  // symmetric elimination of the pinned unknown
    } else {
        // F_- = -(beta0/beta1) u_0 (0 in the weighted Neumann mode):
        // (A u)_0 = (F_{1/2} - F_-)/w_0 + alpha_0 u_0.
        const double slope = robin ? bc_.robin.beta0 / bc_.robin.beta1 : 0.0;
        const double w0 = mesh_->weight(0);
        diag_[0] = (-flux_coeff_[0] + slope) / w0 + alpha_[0];
        super_[0] = flux_coeff_[0] / w0;
    }
    if (pinned_right_) {
        super_[static_cast<std::size_t>(n - 1)] = 0.0;
    } else {
        const double slope = robin ? bc_.robin.gamma0 / bc_.robin.gamma1 : 0.0;
        const double wn = mesh_->weight(n);
        const double f = flux_coeff_[static_cast<std::size_t>(n - 1)];
        sub_[static_cast<std::size_t>(n)] = f / wn;
        diag_[static_cast<std::size_t>(n)] = (-f - slope) / wn + alpha_[static_cast<std::size_t>(n)];
    }
}

std::vector<double> OperatorAssembly::apply(std::span<const double> u) const {
    const int n = mesh_->num_cells();
    if (static_cast<int>(u.size()) != n + 1) throw ShapeError("operator applied to wrong-size data");
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double v = diag_[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        if (i > 0) v += sub_[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i - 1)];
        if (i < n) v += super_[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i + 1)];
        out[static_cast<std::size_t>(i)] = v;
    }
    if (pinned_left_) out[0] = 0.0;
    if (pinned_right_) out[static_cast<std::size_t>(n)] = 0.0;
    return out;
}

double OperatorAssembly::quadratic_form(std::span<const double> u) const {
    const auto au = apply(u);
    double sum = 0.0;
    for (int i = 0; i <= mesh_->num_cells(); ++i) {
        sum += mesh_->weight(i) * au[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    }
    return sum;
}

double OperatorAssembly::quadratic_form_identity(std::span<const double> u) const {
    const int n = mesh_->num_cells();
    const double u0 = pinned_left_ ? 0.0 : u[0];
    const double un = pinned_right_ ? 0.0 : u[static_cast<std::size_t>(n)];
    double sum = 0.0;
    for (int c = 0; c < n; ++c) {
        double ul = u[static_cast<std::size_t>(c)];
        double ur = u[static_cast<std::size_t>(c + 1)];
        if (c == 0) ul = u0;
        if (c == n - 1) ur = un;
        const double jump = ur - ul;
        sum -= flux_coeff_[static_cast<std::size_t>(c)] * jump * jump;
    }
    const bool robin = bc_.kind == BoundaryMode::Kind::Robin;
    if (robin && !pinned_left_) sum += bc_.robin.beta0 / bc_.robin.beta1 * u0 * u0;
    if (robin && !pinned_right_) sum -= bc_.robin.gamma0 / bc_.robin.gamma1 * un * un;
    for (int i = 0; i <= n; ++i) {
        double ui = u[static_cast<std::size_t>(i)];
        if ((i == 0 && pinned_left_) || (i == n && pinned_right_)) ui = 0.0;
        sum += mesh_->weight(i) * alpha_[static_cast<std::size_t>(i)] * ui * ui;
    }
    return sum;
}

double weighted_asymmetry(std::span<const double> sub, std::span<const double> diag,
                          std::span<const double> super, std::span<const double> weights) {
    (void)diag;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        const double upper = weights[i] * super[i];      // w_i A_{i,i+1}
        const double lower = weights[i + 1] * sub[i + 1];  // w_{i+1} A_{i+1,i}
        worst = std::max(worst, std::abs(upper - lower));
        scale = std::max({scale, std::abs(upper), std::abs(lower)});
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

double OperatorAssembly::weighted_asymmetry() const {
    return degenlab::weighted_asymmetry(sub_, diag_, super_, mesh_->weights());
}

double check_self_adjoint(const OperatorAssembly& op) { return op.weighted_asymmetry(); }

GridFunction OperatorAssembly::implicit_step(const GridFunction& u, double dt,
                                             std::span<const double> source) const {
    if (!(dt > 0.0)) throw DomainError("implicit step needs dt > 0");
    const int n = mesh_->num_cells();
    if (u.size() != n + 1 || static_cast<int>(source.size()) != n + 1) {
        throw ShapeError("implicit step got mismatched data");
    }
    std::vector<double> a(static_cast<std::size_t>(n) + 1);  // sub of (I - dt A)
    std::vector<double> b(static_cast<std::size_t>(n) + 1);  // diag
    std::vector<double> c(static_cast<std::size_t>(n) + 1);  // super
    std::vector<double> rhs(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        a[k] = -dt * sub_[k];
        b[k] = 1.0 - dt * diag_[k];
        c[k] = -dt * super_[k];
        rhs[k] = u.values[k] + dt * source[k];
    }
    if (pinned_left_) {
        a[0] = 0.0; b[0] = 1.0; c[0] = 0.0; rhs[0] = 0.0;
    }
    if (pinned_right_) {
        const std::size_t k = static_cast<std::size_t>(n);
        a[k] = 0.0; b[k] = 1.0; c[k] = 0.0; rhs[k] = 0.0;
    }
    // Thomas elimination.
    for (int i = 1; i <= n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double pivot = b[k - 1];
        if (std::abs(pivot) < 1e-14) {
            throw ConvergenceError("implicit step hit a vanishing pivot; reduce the step size");
        }
        const double m = a[k] / pivot;
        b[k] -= m * c[k - 1];
        rhs[k] -= m * rhs[k - 1];
    }
    if (std::abs(b[static_cast<std::size_t>(n)]) < 1e-14) {
        throw ConvergenceError("implicit step hit a vanishing pivot; reduce the step size");
    }
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    v[static_cast<std::size_t>(n)] =
        rhs[static_cast<std::size_t>(n)] / b[static_cast<std::size_t>(n)];
    for (int i = n - 1; i >= 0; --i) {
        const std::size_t k = static_cast<std::size_t>(i);
        v[k] = (rhs[k] - c[k] * v[k + 1]) / b[k];
    }
    return GridFunction(mesh_, std::move(v));
}

OperatorAssembly assemble(MeshPtr mesh, const DiffusionCoefficient& coeff,
                          std::span<const double> alpha_slice, const BoundaryMode& bc) {
    return OperatorAssembly(std::move(mesh), coeff, alpha_slice, bc);
}

}  // namespace degenlab
