#include "rbfdd/smoothness.hpp"

#include "rbfdd/csv.hpp"
#include "rbfdd/errors.hpp"
#include "rbfdd/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rbfdd {

std::size_t quadratic_basis_size(int dim) { return dim == 1 ? 3 : 6; }

std::size_t MlsConfig::stencil_size_for(int dim) const {
    if (stencil_size != 0) return stencil_size;
    return dim == 1 ? 3 : 5;
}

void MlsConfig::validate(int dim) const {
    if (degree != 2) throw std::invalid_argument("MlsConfig: only degree 2 is supported");
    const std::size_t k = stencil_size_for(dim);
    if (k > quadratic_basis_size(dim))
        throw std::invalid_argument("MlsConfig: stencil size exceeds the quadratic basis size");
    if (k < (dim == 1 ? 3u : 5u)) throw std::invalid_argument("MlsConfig: stencil too small");
    if (!(rcond_trigger > 0.0)) throw std::invalid_argument("MlsConfig: rcond_trigger must be > 0");
    if (!(tikhonov_scale > 0.0)) throw std::invalid_argument("MlsConfig: tikhonov_scale must be > 0");
}

SmoothnessField indicator_uniform_1d(std::span<const double> samples, double spacing) {
    const std::size_t n = samples.size();
    if (n < 3) throw std::invalid_argument("indicator_uniform_1d: need >= 3 samples");
    if (!(spacing > 0.0)) throw std::invalid_argument("indicator_uniform_1d: spacing must be > 0");

    SmoothnessField field;
    field.source = IndicatorSource::uniform1d;
    field.values.resize(n);
    field.stencils.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
        const double d2 = samples[c + 1] - 2.0 * samples[c] + samples[c - 1];
        field.values[i] = d2 * d2;
        field.stencils[i] = StencilInfo{c, {c - 1, c, c + 1}, spacing};
    }
    return field;
}

SmoothnessField indicator_uniform_2d(std::span<const double> samples, std::size_t nx,
                                     std::size_t ny, double spacing) {
    if (nx < 3 || ny < 3) throw std::invalid_argument("indicator_uniform_2d: grid must be >= 3x3");
    if (samples.size() != nx * ny) throw std::invalid_argument("indicator_uniform_2d: sample count");
    if (!(spacing > 0.0)) throw std::invalid_argument("indicator_uniform_2d: spacing must be > 0");

    auto at = [&](std::size_t ix, std::size_t iy) { return iy * nx + ix; };
    SmoothnessField field;
    field.source = IndicatorSource::uniform2d;
    field.values.resize(nx * ny);
    field.stencils.resize(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t cx = std::clamp<std::size_t>(ix, 1, nx - 2);
            const std::size_t cy = std::clamp<std::size_t>(iy, 1, ny - 2);
            const std::size_t c = at(cx, cy);
            const double lap = samples[at(cx + 1, cy)] + samples[at(cx - 1, cy)] +
                               samples[at(cx, cy + 1)] + samples[at(cx, cy - 1)] - 4.0 * samples[c];
            field.values[at(ix, iy)] = lap * lap;
            field.stencils[at(ix, iy)] = StencilInfo{
                c, {at(cx + 1, cy), at(cx - 1, cy), at(cx, cy + 1), at(cx, cy - 1), c}, spacing};
        }
    return field;
}

namespace {

/// Rows are the monomials {1, dx, dx^2} or {1, dx, dy, dx^2, dx dy, dy^2}; one column per node.
DenseMatrix moment_matrix(const StencilInfo& stencil, const NodeSet& nodes, double scale) {
    const int dim = nodes.dim();
    const std::size_t m = quadratic_basis_size(dim);
    const std::size_t k = stencil.neighbors.size();
    const Point& c = nodes[stencil.center];
    DenseMatrix v(m, k);
    for (std::size_t j = 0; j < k; ++j) {
        const Point& p = nodes[stencil.neighbors[j]];
        const double dx = (p[0] - c[0]) / scale;
        const double dy = (p[1] - c[1]) / scale;
        if (dim == 1) {
            v(0, j) = 1.0;
            v(1, j) = dx;
            v(2, j) = dx * dx;
        } else {
            v(0, j) = 1.0;
            v(1, j) = dx;
            v(2, j) = dy;
            v(3, j) = dx * dx;
            v(4, j) = dx * dy;
            v(5, j) = dy * dy;
        }
    }
    return v;
}

DenseMatrix gram(const DenseMatrix& v) {
    DenseMatrix g(v.cols(), v.cols());
    for (std::size_t a = 0; a < v.cols(); ++a)
        for (std::size_t b = 0; b < v.cols(); ++b) {
            double s = 0.0;
            for (std::size_t l = 0; l < v.rows(); ++l) s += v(l, a) * v(l, b);
            g(a, b) = s;
        }
    return g;
}

double reciprocal_condition_one(const DenseMatrix& g) {
    try {
        return 1.0 / (g.norm_one() * LuFactorization(g).inverse().norm_one());
    } catch (const SingularMatrixError&) {
        return 0.0;
    }
}

/// Least-squares solve of `a w = rhs` by Householder QR (a has full column rank).
std::vector<double> least_squares(const DenseMatrix& a, std::vector<double> rhs) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    std::vector<double> work(a.data().begin(), a.data().end());
    rhs.resize(std::max(a.rows(), a.cols()), 0.0);
    const int info = LAPACKE_dgels(LAPACK_ROW_MAJOR, 'N', m, n, 1, work.data(), n, rhs.data(), 1);
    if (info != 0) throw SingularMatrixError("least_squares: dgels failed");
    rhs.resize(a.cols());
    return rhs;
}

} // namespace

LaplacianWeights mls_laplacian_weights(const StencilInfo& stencil, const NodeSet& nodes,
                                       const MlsConfig& config) {
    const int dim = nodes.dim();
    config.validate(dim);
    const std::size_t k = stencil.neighbors.size();
    if (k != config.stencil_size_for(dim))
        throw std::invalid_argument("mls_laplacian_weights: stencil size does not match config");
    if (!(stencil.h_loc > 0.0)) throw DegenerateStencilError(stencil.center, "h_loc is zero");

    // Monomials in (x - x0) / h_loc, so rank tests and the regularisation see only the geometry.
    const DenseMatrix v = moment_matrix(stencil, nodes, stencil.h_loc);
    const DenseMatrix g = gram(v);
    const double rcond = reciprocal_condition_one(g);
    if (rcond < 1e3 * std::numeric_limits<double>::epsilon())
        throw DegenerateStencilError(stencil.center, "moment matrix is rank deficient");

    const std::size_t m = v.rows();
    std::vector<double> b(m, 0.0);
    if (dim == 1) {
        b[2] = 2.0;
    } else {
        b[3] = 2.0;
        b[5] = 2.0;
    }

    LaplacianWeights out;
    out.stencil = stencil;
    if (rcond < config.rcond_trigger) {
        double max_diag = 0.0;
        for (std::size_t i = 0; i < k; ++i) max_diag = std::max(max_diag, g(i, i));
        const double lambda = config.tikhonov_scale * max_diag;
        // (V^T V + lambda I) w = V^T b is the least-squares problem [V; sqrt(lambda) I] w = [b; 0].
        DenseMatrix augmented(m + k, k);
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t j = 0; j < k; ++j) augmented(l, j) = v(l, j);
        for (std::size_t j = 0; j < k; ++j) augmented(m + j, j) = std::sqrt(lambda);
        b.resize(m + k, 0.0);
        out.weights = least_squares(augmented, b);
        out.regularized = true;
    } else {
        out.weights = least_squares(v, b);
    }
    const double h2 = stencil.h_loc * stencil.h_loc;
    for (double& w : out.weights) w /= h2;
    if (!std::all_of(out.weights.begin(), out.weights.end(), [](double w) { return std::isfinite(w); }))
        throw DegenerateStencilError(stencil.center, "non-finite weights");
    return out;
}

SmoothnessField indicator_scattered(std::span<const double> samples, const NodeSet& nodes,
                                    const MlsConfig& config) {
    if (samples.size() != nodes.size())
        throw std::invalid_argument("indicator_scattered: one sample per node required");
    config.validate(nodes.dim());
    const std::size_t k = config.stencil_size_for(nodes.dim());

    SmoothnessField field;
    field.source = IndicatorSource::mls;
    field.values.resize(nodes.size());
    field.stencils.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto stencil = nearest_neighbors(nodes, i, k);
        const auto lw = mls_laplacian_weights(stencil, nodes, config);
        double lap = 0.0;
        for (std::size_t j = 0; j < k; ++j) lap += lw.weights[j] * samples[stencil.neighbors[j]];
        const double h2 = stencil.h_loc * stencil.h_loc;
        field.values[i] = h2 * h2 * lap * lap;
        field.stencils[i] = std::move(stencil);
    }
    return field;
}

void write_field_csv(std::ostream& out, const SmoothnessField& field, const NodeSet& nodes,
                     std::span<const int> psi) {
    if (field.values.size() != nodes.size())
        throw std::invalid_argument("write_field_csv: field and node counts differ");
    if (!psi.empty() && psi.size() != nodes.size())
        throw std::invalid_argument("write_field_csv: psi and node counts differ");
    out << "node,x";
    if (nodes.dim() == 2) out << ",y";
    out << ",indicator";
    if (!psi.empty()) out << ",psi";
    out << '\n';
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out << i << ',' << csv::format_double(nodes[i][0]);
        if (nodes.dim() == 2) out << ',' << csv::format_double(nodes[i][1]);
        out << ',' << csv::format_double(field.values[i]);
        if (!psi.empty()) out << ',' << psi[i];
        out << '\n';
    }
}

} // namespace rbfdd
