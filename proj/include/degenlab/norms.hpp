#pragma once

#include <map>

#include "degenlab/coefficient.hpp"
#include "degenlab/mesh.hpp"

namespace degenlab {

/// ||u||_{L^p(-1,1)} on the mesh quadrature; p may be infinity.
double lp_norm(const GridFunction& u, double p);
double l2_norm(const GridFunction& u);
double linf_norm(const GridFunction& u);

/// |u|_{1,a} = ||sqrt(a) u_x||_{L^2}, with a sampled at cell midpoints.
double seminorm_1a(const GridFunction& u, const DiffusionCoefficient& coeff);

/// ||u||_{1,a}^2 = ||u||^2 + |u|_{1,a}^2.
double norm_1a(const GridFunction& u, const DiffusionCoefficient& coeff);

/// ||(a u_x)_x||_{L^2} from divided differences of the midpoint fluxes
/// F_{c+1/2} = a(x_{c+1/2}) d_{c+1/2}; only interior nodes contribute, so the
/// value stays well defined as a vanishes at the boundary.
double flux_divergence_l2(const GridFunction& u, const DiffusionCoefficient& coeff);

/// ||u||_{2,a}^2 = ||u||_{1,a}^2 + ||(a u_x)_x||^2.
double norm_2a(const GridFunction& u, const DiffusionCoefficient& coeff);

/// Energy norm of the evolution space: sup-in-time L^2 plus twice the
/// time-integrated weighted gradient energy, square-rooted. The sup is the
/// max over time nodes; the time integral is a trapezoid.
double b_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff);

/// Strict-solution norm: sup-in-time of (||u||^2 + |u|_{1,a}^2) plus the time
/// integral of (||u_t||^2 + ||(a u_x)_x||^2). u_t uses forward differences,
/// so at least two time steps are required.
double h_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff);

/// Equivalent Hilbert-space variant: the plain time integral of all four
/// squared terms. Read-only diagnostic.
double h_hilbert_norm(const SpaceTimeFunction& u, const DiffusionCoefficient& coeff);

/// ||u||_{L^p(Q_T)} with a trapezoid outer time integral.
double lp_qt_norm(const SpaceTimeFunction& u, double p);

/// Weighted L^2 inner product and norm on nodal data.
double weighted_inner(const Mesh& mesh, std::span<const double> u, std::span<const double> v);
double weighted_l2(const Mesh& mesh, std::span<const double> u);

struct NormReport {
    double l2 = 0.0;
    double seminorm_1a = 0.0;
    double norm_1a = 0.0;
    double norm_2a = 0.0;
    double linf = 0.0;
    std::map<double, double> lp;
};

NormReport compute_norm_report(const GridFunction& u, const DiffusionCoefficient& coeff,
                               std::span<const double> lp_exponents);

}  // namespace degenlab
