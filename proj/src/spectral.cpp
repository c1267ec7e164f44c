#include "degenlab/spectral.hpp"

#include <cmath>

#include "degenlab/errors.hpp"
#include "degenlab/norms.hpp"

extern "C" {
void dstev_(const char* jobz, const int* n, double* d, double* e, double* z, const int* ldz,
            double* work, int* info);
}

namespace degenlab {

SpectralBasis SpectralBasis::compute(const OperatorAssembly& op) {
    const Mesh& mesh = op.mesh();
    const int nodes = mesh.num_nodes();
    const int lo = op.pinned_left() ? 1 : 0;
    const int hi = op.pinned_right() ? nodes - 1 : nodes;  // exclusive
    const int dim = hi - lo;
    if (dim < 2) throw ShapeError("spectral basis needs at least two active nodes");

    // Symmetrize with D = diag(w): S = D^{1/2} A D^{-1/2} is tridiagonal
    // symmetric with S_{i,i+1} = A_{i,i+1} sqrt(w_i / w_{i+1}).
    std::vector<double> d(static_cast<std::size_t>(dim));
    std::vector<double> e(static_cast<std::size_t>(dim));
    const auto diag = op.diag();
    const auto super = op.super();
    const auto w = mesh.weights();
    for (int i = 0; i < dim; ++i) {
        d[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(lo + i)];
    }
    for (int i = 0; i + 1 < dim; ++i) {
        const std::size_t g = static_cast<std::size_t>(lo + i);
        e[static_cast<std::size_t>(i)] = super[g] * std::sqrt(w[g] / w[g + 1]);
    }

    std::vector<double> z(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
    std::vector<double> work(static_cast<std::size_t>(std::max(1, 2 * dim - 2)));
    int info = 0;
    const char jobz = 'V';
    dstev_(&jobz, &dim, d.data(), e.data(), z.data(), &dim, work.data(), &info);
    if (info != 0) throw ConvergenceError("tridiagonal eigensolver failed to converge");

    SpectralBasis basis;
    basis.mesh_ = op.mesh_ptr();
    basis.eigenvalues_ = d;  // ascending
    basis.modes_.resize(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        auto& mode = basis.modes_[static_cast<std::size_t>(j)];
        mode.assign(static_cast<std::size_t>(nodes), 0.0);
        for (int i = 0; i < dim; ++i) {
            const std::size_t g = static_cast<std::size_t>(lo + i);
            mode[g] = z[static_cast<std::size_t>(j) * static_cast<std::size_t>(dim) +
                        static_cast<std::size_t>(i)] /
                      std::sqrt(w[g]);
        }
    }
    return basis;
}

GridFunction SpectralBasis::project_low_frequency(const GridFunction& u, int k,
                                                  bool* clamped) const {
    if (u.mesh.get() != mesh_.get()) throw ShapeError("projection needs the basis mesh");
    if (k < 1) throw DomainError("projection needs k >= 1");
    const int dim = size();
    if (clamped) *clamped = k > dim;
    k = std::min(k, dim);
    std::vector<double> out(u.values.size(), 0.0);
    // Eigenvalues ascend (most negative first); the low-frequency modes are
    // the trailing ones, closest to zero.
    for (int j = dim - k; j < dim; ++j) {
        const auto m = mode(j);
        const double coeff = weighted_inner(*mesh_, u.values, m);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += coeff * m[i];
    }
    return GridFunction(mesh_, std::move(out));
}

GridFunction regularize_datum(const GridFunction& u0, const SpectralBasis& basis, int k,
                              bool* clamped) {
    return basis.project_low_frequency(u0, k, clamped);
}

}  // namespace degenlab
