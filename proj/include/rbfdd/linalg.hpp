#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rbfdd {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Exact (bitwise-equal entries) symmetry test.
    bool is_symmetric() const;
    bool all_finite() const;

    std::vector<double> multiply(std::span<const double> x) const;
    DenseMatrix multiply(const DenseMatrix& other) const;

    double norm_one() const;
    double norm_inf() const;

    DenseMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// LU factorization with partial pivoting (LAPACK getrf).
class LuFactorization {
public:
    /// Throws SingularMatrixError when a pivot magnitude is below N * eps * ||a||_inf.
    explicit LuFactorization(const DenseMatrix& a);

    std::size_t size() const noexcept { return n_; }
    std::vector<double> solve(std::span<const double> rhs) const;
    DenseMatrix inverse() const;

    double log_abs_determinant() const;
    int determinant_sign() const;
    double determinant() const;

private:
    std::size_t n_;
    // Factors of a^T in column-major order, which is a's row-major buffer.
    std::vector<double> lu_;
    std::vector<int> ipiv_;
};

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> rhs);

/// Cholesky when `a` is exactly symmetric and positive definite, LU otherwise.
std::vector<double> solve(const DenseMatrix& a, std::span<const double> rhs);

enum class NormKind { one, two, inf };

struct ConditionReport {
    NormKind norm = NormKind::two;
    double kappa = 1.0;
};

/**
 * kappa = ||a|| * ||a^-1||. The 2-norm uses singular values (symmetric
 * eigenvalues when `a` is exactly symmetric); the 1- and inf-norms use the
 * explicit inverse.
 */
ConditionReport condition_number(const DenseMatrix& a, NormKind norm);

/// Smooth nodes (flag 1) first, then flagged nodes (flag 0), each in original order.
struct BlockPartition {
    std::vector<std::size_t> smooth_idx;
    std::vector<std::size_t> flagged_idx;
    /// permutation[k] = original index placed at position k.
    std::vector<std::size_t> permutation;
};

BlockPartition block_partition(std::span<const int> psi_flags);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

/// out[k] = values[perm[k]].
std::vector<double> permute(std::span<const double> values, std::span<const std::size_t> perm);

struct BlockSolution {
    std::vector<double> u;
    std::vector<double> u_prime;
};

/// Solves [[A~, 0], [C, I]] (u, u') = (z, z') by forward decoupling.
BlockSolution block_solve(const DenseMatrix& a_tilde, const DenseMatrix& c_block,
                          std::span<const double> z_smooth, std::span<const double> z_flagged);

/// The block matrix [[A~, 0], [C, I]].
DenseMatrix assemble_block_matrix(const DenseMatrix& a_tilde, const DenseMatrix& c_block);

/// Upper bound on kappa_inf([[A~, 0], [C, I]]) from the blocks alone.
double condition_bound_inf(const DenseMatrix& a_tilde, const DenseMatrix& c_block);

} // namespace rbfdd
