#pragma once

#include <vector>

#include "degenlab/diffusion_operator.hpp"
#include "degenlab/mesh.hpp"

namespace degenlab {

/// Discrete eigenpairs of the pure-diffusion operator (alpha = 0), computed
/// once from the weighted-symmetric form D^{1/2} A D^{-1/2} with a symmetric
/// tridiagonal eigensolver. Modes are orthonormal in the quadrature-weighted
/// inner product and vanish at pinned Dirichlet nodes.
class SpectralBasis {
public:
    static SpectralBasis compute(const OperatorAssembly& pure_diffusion);

    int size() const { return static_cast<int>(eigenvalues_.size()); }
    double eigenvalue(int j) const { return eigenvalues_[static_cast<std::size_t>(j)]; }
    std::span<const double> mode(int j) const { return modes_[static_cast<std::size_t>(j)]; }
    const Mesh& mesh() const { return *mesh_; }
    MeshPtr mesh_ptr() const { return mesh_; }

    /// Projection onto the k lowest-frequency modes (eigenvalues closest to
    /// zero). k beyond the basis size is clamped.
    GridFunction project_low_frequency(const GridFunction& u, int k, bool* clamped = nullptr) const;

private:
    MeshPtr mesh_;
    std::vector<double> eigenvalues_;            // ascending
    std::vector<std::vector<double>> modes_;
};

/// Spectral smoothing of an initial datum: the projection above, yielding a
/// datum with finite, k-controlled weighted H^1 norm.
GridFunction regularize_datum(const GridFunction& u0, const SpectralBasis& basis, int k,
                              bool* clamped = nullptr);

}  // namespace degenlab
