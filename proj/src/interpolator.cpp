#include "rbfdd/interpolator.hpp"

#include "parallel.hpp"
#include "rbfdd/csv.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rbfdd {

namespace {

inline double fast_distance(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

DenseMatrix assemble_columns(const NodeSet& centers, const KernelSpec& kernel,
                             std::span<const double> column_eps) {
    const std::size_t n = centers.size();
    DenseMatrix a(n, n);
    detail::dispatch(kernel.kind, [&]<KernelKind K>() {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = i == j ? kernel.value_at_zero
                                 : detail::phi<K>(column_eps[j] * fast_distance(centers[i], centers[j]));
    });
    return a;
}

} // namespace

DenseMatrix assemble_classical(const NodeSet& centers, const KernelSpec& kernel, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("assemble_classical: eps must be > 0");
    std::vector<double> column_eps(centers.size(), eps);
    return assemble_columns(centers, kernel, column_eps);
}

DenseMatrix assemble_dd(const NodeSet& centers, const KernelSpec& kernel, const AdaptedShapes& shapes) {
    if (shapes.eps_tilde.size() != centers.size() || shapes.psi_flags.size() != centers.size())
        throw std::invalid_argument("assemble_dd: shapes do not match the centre count");
    for (double e : shapes.eps_tilde)
        if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("assemble_dd: invalid shape");
    return assemble_columns(centers, kernel, shapes.eps_tilde);
}

DenseMatrix system_matrix(const RbfModel& model) {
    return assemble_dd(model.centers, model.kernel, model.shapes);
}

RbfModel fit(const NodeSet& centers, std::span<const double> samples, const KernelSpec& kernel,
             const AdaptationParams& params, const SmoothnessField* field, SolvePath path) {
    if (samples.size() != centers.size())
        throw std::invalid_argument("fit: one sample per centre required");
    params.validate();

    RbfModel model{kernel, centers, {}, {}, FitMode::classical};
    if (field == nullptr) {
        model.shapes = AdaptedShapes::uniform(centers.size(), params.eps);
        model.coefficients = solve(assemble_classical(centers, kernel, params.eps), samples);
        return model;
    }

    if (field->values.size() != centers.size())
        throw std::invalid_argument("fit: smoothness field does not match the centre count");
    model.mode = FitMode::data_dependent;
    model.shapes = adapt_all(*field, params);
    const DenseMatrix a = assemble_dd(centers, kernel, model.shapes);

    if (path == SolvePath::direct) {
        model.coefficients = solve(a, samples);
        return model;
    }

    const BlockPartition part = block_partition(model.shapes.psi_flags);
    const DenseMatrix a_tilde = a.select(part.smooth_idx, part.smooth_idx);
    const DenseMatrix c_block = a.select(part.flagged_idx, part.smooth_idx);
    std::vector<double> z(part.smooth_idx.size());
    std::vector<double> z_prime(part.flagged_idx.size());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = samples[part.smooth_idx[k]];
    for (std::size_t k = 0; k < z_prime.size(); ++k) z_prime[k] = samples[part.flagged_idx[k]];

    // The flagged diagonal is value_at_zero rather than 1, so u' = value_at_zero * lambda'.
    const BlockSolution sol = block_solve(a_tilde, c_block, z, z_prime);
    model.coefficients.assign(centers.size(), 0.0);
    for (std::size_t k = 0; k < sol.u.size(); ++k) model.coefficients[part.smooth_idx[k]] = sol.u[k];
    for (std::size_t k = 0; k < sol.u_prime.size(); ++k)
        model.coefficients[part.flagged_idx[k]] = sol.u_prime[k] / kernel.value_at_zero;
    return model;
}

std::vector<double> evaluate(const RbfModel& model, const NodeSet& points) {
    if (points.dim() != model.centers.dim())
        throw std::invalid_argument("evaluate: dimension mismatch between points and centres");

    // Terms with psi = 0 contribute nothing; keep only the retained centres.
    std::vector<Point> centres;
    std::vector<double> weights;
    std::vector<double> shapes;
    for (std::size_t i = 0; i < model.centers.size(); ++i) {
        if (model.shapes.psi_flags[i] == 0) continue;
        centres.push_back(model.centers[i]);
        weights.push_back(model.coefficients[i]);
        shapes.push_back(model.shapes.eps_tilde[i]);
    }

    std::vector<double> out(points.size(), 0.0);
    detail::dispatch(model.kernel.kind, [&]<KernelKind K>() {
        detail::parallel_for(points.size(), 256, [&](std::size_t begin, std::size_t end) {
            for (std::size_t p = begin; p < end; ++p) {
                const Point& x = points[p];
                double s = 0.0;
                for (std::size_t i = 0; i < centres.size(); ++i)
                    s += weights[i] * detail::phi<K>(shapes[i] * fast_distance(x, centres[i]));
                out[p] = s;
            }
        });
    });
    return out;
}

void write_model_csv(std::ostream& out, const RbfModel& model) {
    out << (model.centers.dim() == 1 ? "x" : "x,y") << ",lambda,eps_tilde,psi\n";
    for (std::size_t i = 0; i < model.centers.size(); ++i) {
        out << csv::format_double(model.centers[i][0]);
        if (model.centers.dim() == 2) out << ',' << csv::format_double(model.centers[i][1]);
        out << ',' << csv::format_double(model.coefficients[i]) << ','
            << csv::format_double(model.shapes.eps_tilde[i]) << ',' << model.shapes.psi_flags[i] << '\n';
    }
}

} // namespace rbfdd
