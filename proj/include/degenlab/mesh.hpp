#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace degenlab {

/// Graded spatial mesh of [-1, 1] with composite-trapezoid quadrature
/// weights. Nodes follow x_i = sign(s_i) (1 - (1 - |s_i|)^g) with
/// s_i = -1 + 2i/N; g = 1 is uniform, larger g clusters nodes at the
/// endpoints where the coefficient degenerates. Immutable after creation.
class Mesh {
public:
    static std::shared_ptr<const Mesh> create(int num_cells, double grading_exponent);

    int num_cells() const { return static_cast<int>(nodes_.size()) - 1; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    double grading_exponent() const { return grading_; }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
    double cell_width(int c) const { return widths_[static_cast<std::size_t>(c)]; }
    double cell_midpoint(int c) const { return midpoints_[static_cast<std::size_t>(c)]; }

private:
    Mesh() = default;

    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> widths_;
    std::vector<double> midpoints_;
    double grading_ = 1.0;
};

using MeshPtr = std::shared_ptr<const Mesh>;

MeshPtr make_mesh(int num_cells, double grading_exponent);

/// Nodal values on a mesh.
struct GridFunction {
    MeshPtr mesh;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(MeshPtr m, std::vector<double> v);

    static GridFunction sample(MeshPtr m, const std::function<double(double)>& f);
    static GridFunction zero(MeshPtr m);

    int size() const { return static_cast<int>(values.size()); }
};

/// Composite trapezoid integral of nodal data over [-1, 1].
double quad_integral(const Mesh& mesh, std::span<const double> integrand);
double quad_integral(const GridFunction& u);

/// Divided differences on cells: d_{c+1/2} = (u_{c+1} - u_c) / h_{c+1/2}.
std::vector<double> midpoint_derivative(const GridFunction& u);

/// Uniform grid of [0, T].
struct TimeGrid {
    double horizon = 1.0;
    int steps = 1;

    TimeGrid() = default;
    TimeGrid(double T, int M);

    double dt() const { return horizon / steps; }
    double node(int n) const { return n == steps ? horizon : horizon * n / steps; }
    int num_nodes() const { return steps + 1; }
};

/// Time-indexed stack of grid functions on one shared mesh (slice-major
/// storage).
struct SpaceTimeFunction {
    TimeGrid time;
    MeshPtr mesh;
    std::vector<double> data;

    SpaceTimeFunction() = default;
    SpaceTimeFunction(TimeGrid tg, MeshPtr m);

    static SpaceTimeFunction sample(TimeGrid tg, MeshPtr m,
                                    const std::function<double(double, double)>& f);

    std::span<const double> slice(int n) const;
    std::span<double> slice(int n);
    GridFunction slice_function(int n) const;
    void set_slice(int n, std::span<const double> values);

    int num_slices() const { return time.steps + 1; }
};

SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b);

/// CSV with a header row of node coordinates and one row per time slice.
void write_csv(const SpaceTimeFunction& u, std::ostream& os);

/// Round-trip formatting helper used by every report writer.
std::string format_double(double v);

}  // namespace degenlab
