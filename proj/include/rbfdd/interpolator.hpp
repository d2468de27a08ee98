#pragma once

#include "rbfdd/adaptation.hpp"
#include "rbfdd/geometry.hpp"
#include "rbfdd/kernels.hpp"
#include "rbfdd/linalg.hpp"
#include "rbfdd/smoothness.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace rbfdd {

enum class FitMode { classical, data_dependent };
enum class SolvePath { direct, block };

/// Fitted interpolant. Classical models carry eps_tilde = eps and all psi = 1.
struct RbfModel {
    KernelSpec kernel;
    NodeSet centers;
    std::vector<double> coefficients;
    AdaptedShapes shapes;
    FitMode mode = FitMode::classical;
};

/// A(i, j) = phi(eps * |x_i - x_j|).
DenseMatrix assemble_classical(const NodeSet& centers, const KernelSpec& kernel, double eps);

/// A(i, j) = phi(eps~_j * |x_i - x_j|); the shape of column j belongs to centre j.
DenseMatrix assemble_dd(const NodeSet& centers, const KernelSpec& kernel, const AdaptedShapes& shapes);

/**
 * Classical fit when `field` is null, data-dependent fit otherwise.
 *
 * The block path reorders smooth centres first and solves the smooth block
 * alone; flagged coefficients then follow from one matrix-vector product.
 * Entries that are zero only in the delta limit (IMQ decays algebraically)
 * are dropped by that path.
 */
RbfModel fit(const NodeSet& centers, std::span<const double> samples, const KernelSpec& kernel,
             const AdaptationParams& params, const SmoothnessField* field,
             SolvePath path = SolvePath::direct);

/// sum_i lambda_i psi_i phi(eps~_i |x - x_i|); psi = 1 throughout for classical models.
std::vector<double> evaluate(const RbfModel& model, const NodeSet& points);

/// The interpolation matrix matching the model's mode and shapes.
DenseMatrix system_matrix(const RbfModel& model);

/// x[,y],lambda,eps_tilde,psi
void write_model_csv(std::ostream& out, const RbfModel& model);

} // namespace rbfdd
