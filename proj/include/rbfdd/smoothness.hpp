#pragma once

#include "rbfdd/geometry.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace rbfdd {

struct MlsConfig {
    int degree = 2;
    /// 0 selects the default: 3 in 1D, 5 in 2D.
    std::size_t stencil_size = 0;
    double rcond_trigger = 1e-10;
    double tikhonov_scale = 1e-10;

    std::size_t stencil_size_for(int dim) const;
    void validate(int dim) const;
};

/// Number of monomials of total degree <= 2 in `dim` variables.
std::size_t quadratic_basis_size(int dim);

struct LaplacianWeights {
    StencilInfo stencil;
    std::vector<double> weights; // aligned with stencil.neighbors
    bool regularized = false;
};

enum class IndicatorSource { uniform1d, uniform2d, mls };

struct SmoothnessField {
    std::vector<double> values;
    std::vector<StencilInfo> stencils;
    IndicatorSource source = IndicatorSource::uniform1d;
};

/// Squared undivided second difference; boundary nodes copy their interior neighbour.
SmoothnessField indicator_uniform_1d(std::span<const double> samples, double spacing);

/// Squared undivided five-point Laplacian on an nx-by-ny grid (index iy * nx + ix).
/// Boundary nodes copy the nearest interior node.
SmoothnessField indicator_uniform_2d(std::span<const double> samples, std::size_t nx,
                                     std::size_t ny, double spacing);

/**
 * Least-squares Laplacian weights exact on quadratics, i.e. the minimiser of
 * ||V w - b|| with V(l, j) = p_l(x_j) for the monomials centred at the stencil
 * centre and divided by h_loc (weights are scaled back by 1 / h_loc^2). When the 1-norm reciprocal condition of V^T V drops below
 * `rcond_trigger`, the Tikhonov-regularised system
 * (V^T V + lambda I) w = V^T b with lambda = tikhonov_scale * max diag(V^T V)
 * is solved instead.
 *
 * Throws DegenerateStencilError when the stencil cannot resolve the
 * Laplacian at all (e.g. collinear points in 2D).
 */
LaplacianWeights mls_laplacian_weights(const StencilInfo& stencil, const NodeSet& nodes,
                                       const MlsConfig& config);

/// I_i = h_loc^4 * (sum_j w_j u_j)^2 over the K-nearest stencil of each node.
SmoothnessField indicator_scattered(std::span<const double> samples, const NodeSet& nodes,
                                    const MlsConfig& config);

/// node,x[,y],indicator[,psi]
void write_field_csv(std::ostream& out, const SmoothnessField& field, const NodeSet& nodes,
                     std::span<const int> psi = {});

} // namespace rbfdd
