#include "degenlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "degenlab/errors.hpp"

namespace degenlab {

std::shared_ptr<const Mesh> Mesh::create(int num_cells, double grading_exponent) {
    if (num_cells < 8 || num_cells % 2 != 0) {
        throw ConfigError("mesh needs an even cell count of at least 8");
    }
    if (!(grading_exponent >= 1.0)) {
        throw ConfigError("mesh grading exponent must be at least 1");
    }
    auto mesh = std::shared_ptr<Mesh>(new Mesh());
    mesh->grading_ = grading_exponent;
    const int n = num_cells;
    auto& x = mesh->nodes_;
    x.assign(static_cast<std::size_t>(n) + 1, 0.0);
    // Build the left half and mirror it, so symmetry is exact in floating point.
    for (int i = 0; i < n / 2; ++i) {
        const double s = -1.0 + 2.0 * i / n;  // s in [-1, 0)
        const double xi = -(1.0 - std::pow(1.0 + s, grading_exponent));
        x[static_cast<std::size_t>(i)] = xi;
        x[static_cast<std::size_t>(n - i)] = -xi;
    }
    x[static_cast<std::size_t>(n / 2)] = 0.0;
    x[0] = -1.0;
    x[static_cast<std::size_t>(n)] = 1.0;

    mesh->widths_.resize(static_cast<std::size_t>(n));
    mesh->midpoints_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        mesh->widths_[static_cast<std::size_t>(c)] =
            x[static_cast<std::size_t>(c + 1)] - x[static_cast<std::size_t>(c)];
        mesh->midpoints_[static_cast<std::size_t>(c)] =
            0.5 * (x[static_cast<std::size_t>(c)] + x[static_cast<std::size_t>(c + 1)]);
    }
    auto& w = mesh->weights_;
    w.assign(static_cast<std::size_t>(n) + 1, 0.0);
    w[0] = 0.5 * mesh->widths_[0];
    for (int i = 1; i < n; ++i) {
        w[static_cast<std::size_t>(i)] =
            0.5 * (mesh->widths_[static_cast<std::size_t>(i - 1)] +
                   mesh->widths_[static_cast<std::size_t>(i)]);
    }
    w[static_cast<std::size_t>(n)] = 0.5 * mesh->widths_[static_cast<std::size_t>(n - 1)];
    return mesh;
}

MeshPtr make_mesh(int num_cells, double grading_exponent) {
    return Mesh::create(num_cells, grading_exponent);
}

GridFunction::GridFunction(MeshPtr m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
    if (!mesh) throw ShapeError("grid function needs a mesh");
    if (static_cast<int>(values.size()) != mesh->num_nodes()) {
        throw ShapeError("grid function values do not match the mesh size");
    }
}

GridFunction GridFunction::sample(MeshPtr m, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(m->num_nodes()));
    for (int i = 0; i < m->num_nodes(); ++i) v[static_cast<std::size_t>(i)] = f(m->node(i));
    return GridFunction(std::move(m), std::move(v));
}

GridFunction GridFunction::zero(MeshPtr m) {
    std::vector<double> v(static_cast<std::size_t>(m->num_nodes()), 0.0);
    return GridFunction(std::move(m), std::move(v));
}

double quad_integral(const Mesh& mesh, std::span<const double> integrand) {
    if (static_cast<int>(integrand.size()) != mesh.num_nodes()) {
        throw ShapeError("integrand length does not match the mesh");
    }
    double sum = 0.0;
    const auto w = mesh.weights();
    for (std::size_t i = 0; i < integrand.size(); ++i) sum += w[i] * integrand[i];
    return sum;
}

double quad_integral(const GridFunction& u) { return quad_integral(*u.mesh, u.values); }

std::vector<double> midpoint_derivative(const GridFunction& u) {
    const Mesh& mesh = *u.mesh;
    std::vector<double> d(static_cast<std::size_t>(mesh.num_cells()));
    for (int c = 0; c < mesh.num_cells(); ++c) {
        d[static_cast<std::size_t>(c)] =
            (u.values[static_cast<std::size_t>(c + 1)] - u.values[static_cast<std::size_t>(c)]) /
            mesh.cell_width(c);
    }
    return d;
}

TimeGrid::TimeGrid(double T, int M) : horizon(T), steps(M) {
    if (!(T > 0.0)) throw ConfigError("time horizon must be positive");
    if (M < 1) throw ConfigError("time grid needs at least one step");
}

SpaceTimeFunction::SpaceTimeFunction(TimeGrid tg, MeshPtr m)
    : time(tg), mesh(std::move(m)),
      data(static_cast<std::size_t>(tg.steps + 1) * static_cast<std::size_t>(mesh->num_nodes()),
           0.0) {}

SpaceTimeFunction SpaceTimeFunction::sample(TimeGrid tg, MeshPtr m,
                                            const std::function<double(double, double)>& f) {
    SpaceTimeFunction u(tg, std::move(m));
    for (int n = 0; n <= tg.steps; ++n) {
        const double t = u.time.node(n);
        auto s = u.slice(n);
        for (int i = 0; i < u.mesh->num_nodes(); ++i) s[static_cast<std::size_t>(i)] = f(t, u.mesh->node(i));
    }
    return u;
}

std::span<const double> SpaceTimeFunction::slice(int n) const {
    const std::size_t width = static_cast<std::size_t>(mesh->num_nodes());
    return {data.data() + static_cast<std::size_t>(n) * width, width};
}

std::span<double> SpaceTimeFunction::slice(int n) {
    const std::size_t width = static_cast<std::size_t>(mesh->num_nodes());
    return {data.data() + static_cast<std::size_t>(n) * width, width};
}

GridFunction SpaceTimeFunction::slice_function(int n) const {
    const auto s = slice(n);
    return GridFunction(mesh, std::vector<double>(s.begin(), s.end()));
}

void SpaceTimeFunction::set_slice(int n, std::span<const double> values) {
    auto s = slice(n);
    if (values.size() != s.size()) throw ShapeError("slice length mismatch");
    std::copy(values.begin(), values.end(), s.begin());
}

SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
    const bool same_mesh =
        a.mesh.get() == b.mesh.get() ||
        (a.mesh->num_nodes() == b.mesh->num_nodes() &&
         std::equal(a.mesh->nodes().begin(), a.mesh->nodes().end(), b.mesh->nodes().begin()));
    if (!same_mesh || a.time.steps != b.time.steps || a.time.horizon != b.time.horizon) {
        throw ShapeError("space-time difference needs matching grids");
    }
    SpaceTimeFunction out(a.time, a.mesh);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const SpaceTimeFunction& u, std::ostream& os) {
    const int width = u.mesh->num_nodes();
    for (int i = 0; i < width; ++i) {
        if (i) os << ',';
        os << format_double(u.mesh->node(i));
    }
    os << '\n';
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        for (int i = 0; i < width; ++i) {
            if (i) os << ',';
            os << format_double(s[static_cast<std::size_t>(i)]);
        }
        os << '\n';
    }
}

}  // namespace degenlab
