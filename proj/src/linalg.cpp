#include "rbfdd/linalg.hpp"

#include "rbfdd/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rbfdd {

static_assert(sizeof(lapack_int) == sizeof(int), "LP64 LAPACK interface expected");

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* row = data_.data() + i * cols_;
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("multiply: dimension mismatch");
    DenseMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

double DenseMatrix::norm_one() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double DenseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

DenseMatrix DenseMatrix::select(std::span<const std::size_t> row_idx,
                                std::span<const std::size_t> col_idx) const {
    DenseMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
    return out;
}

LuFactorization::LuFactorization(const DenseMatrix& a) : n_(a.rows()) {
    if (!a.is_square()) throw std::invalid_argument("LU: matrix must be square");
    if (!a.all_finite()) throw std::invalid_argument("LU: matrix has non-finite entries");
    if (n_ == 0) return;
    lu_.assign(a.data().begin(), a.data().end());
    ipiv_.resize(n_);
    const int n = static_cast<int>(n_);
    const int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, lu_.data(), n, ipiv_.data());
    if (info < 0) throw std::runtime_error("LU: dgetrf argument error");
    const double threshold =
        static_cast<double>(n_) * std::numeric_limits<double>::epsilon() * a.norm_inf();
    for (std::size_t i = 0; i < n_; ++i) {
        const double pivot = std::abs(lu_[i * n_ + i]);
        if (!(pivot >= threshold) || pivot == 0.0)
            throw SingularMatrixError("LU: pivot " + std::to_string(i) + " magnitude " +
                                      std::to_string(pivot) + " below threshold");
    }
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_) throw std::invalid_argument("LU solve: rhs length mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    if (n_ == 0) return x;
    const int n = static_cast<int>(n_);
    // Stored factors belong to a^T, so a x = b is the transposed solve.
    const int info =
        LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'T', n, 1, lu_.data(), n, ipiv_.data(), x.data(), n);
    if (info != 0) throw std::runtime_error("LU solve: dgetrs failed");
    return x;
}

DenseMatrix LuFactorization::inverse() const {
    DenseMatrix inv(n_, n_);
    if (n_ == 0) return inv;
    std::copy(lu_.begin(), lu_.end(), inv.data().begin());
    auto ipiv = ipiv_;
    const int n = static_cast<int>(n_);
    const int info = LAPACKE_dgetri(LAPACK_COL_MAJOR, n, inv.data().data(), n, ipiv.data());
    if (info != 0) throw SingularMatrixError("LU inverse: dgetri failed");
    // inverse of a^T in column-major is inverse of a in row-major
    return inv;
}

double LuFactorization::log_abs_determinant() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += std::log(std::abs(lu_[i * n_ + i]));
    return s;
}

int LuFactorization::determinant_sign() const {
    int sign = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        if (lu_[i * n_ + i] < 0.0) sign = -sign;
        if (ipiv_[i] != static_cast<int>(i) + 1) sign = -sign;
    }
    return sign;
}

double LuFactorization::determinant() const {
    return determinant_sign() * std::exp(log_abs_determinant());
}

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> rhs) {
    if (rhs.size() != a.rows()) throw std::invalid_argument("lu_solve: rhs length mismatch");
    return LuFactorization(a).solve(rhs);
}

std::vector<double> solve(const DenseMatrix& a, std::span<const double> rhs) {
    if (!a.is_square()) throw std::invalid_argument("solve: square matrix required");
    if (rhs.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    if (a.rows() > 0 && a.is_symmetric()) {
        // symmetric storage is its own transpose, so the row-major buffer works as column-major
        std::vector<double> factor(a.data().begin(), a.data().end());
        std::vector<double> x(rhs.begin(), rhs.end());
        const auto ni = static_cast<lapack_int>(a.rows());
        if (LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', ni, factor.data(), ni) == 0 &&
            LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', ni, 1, factor.data(), ni, x.data(), ni) == 0)
            return x;
    }
    return lu_solve(a, rhs);
}

namespace {

double two_norm_condition(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> work(a.data().begin(), a.data().end());
    std::vector<double> values(n);
    const int ni = static_cast<int>(n);
    double smax = 0.0;
    double smin = 0.0;
    if (a.is_symmetric()) {
        const int info = LAPACKE_dsyevd_2stage(LAPACK_COL_MAJOR, 'N', 'U', ni, work.data(), ni, values.data());
        if (info != 0) throw std::runtime_error("condition_number: dsyevd failed");
        smax = 0.0;
        smin = std::numeric_limits<double>::infinity();
        for (double v : values) {
            smax = std::max(smax, std::abs(v));
            smin = std::min(smin, std::abs(v));
        }
    } else {
        const int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', ni, ni, work.data(), ni, values.data(),
                                        nullptr, 1, nullptr, 1);
        if (info != 0) throw std::runtime_error("condition_number: dgesdd failed");
        smax = values.front();
        smin = values.back();
    }
    if (!(smin > 0.0)) throw SingularMatrixError("condition_number: zero singular value");
    return smax / smin;
}

} // namespace

ConditionReport condition_number(const DenseMatrix& a, NormKind norm) {
    if (!a.is_square() || a.rows() == 0)
        throw std::invalid_argument("condition_number: non-empty square matrix required");
    if (!a.all_finite()) throw std::invalid_argument("condition_number: non-finite entries");
    ConditionReport report;
    report.norm = norm;
    switch (norm) {
    case NormKind::two: report.kappa = two_norm_condition(a); break;
    case NormKind::one: report.kappa = a.norm_one() * LuFactorization(a).inverse().norm_one(); break;
    case NormKind::inf: report.kappa = a.norm_inf() * LuFactorization(a).inverse().norm_inf(); break;
    }
    return report;
}

BlockPartition block_partition(std::span<const int> psi_flags) {
    BlockPartition p;
    for (std::size_t i = 0; i < psi_flags.size(); ++i) {
        if (psi_flags[i] == 1)
            p.smooth_idx.push_back(i);
        else if (psi_flags[i] == 0)
            p.flagged_idx.push_back(i);
        else
            throw std::invalid_argument("block_partition: flags must be 0 or 1");
    }
    p.permutation = p.smooth_idx;
    p.permutation.insert(p.permutation.end(), p.flagged_idx.begin(), p.flagged_idx.end());
    return p;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
    return inv;
}

std::vector<double> permute(std::span<const double> values, std::span<const std::size_t> perm) {
    if (values.size() != perm.size()) throw std::invalid_argument("permute: length mismatch");
    std::vector<double> out(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) out[k] = values[perm[k]];
    return out;
}

BlockSolution block_solve(const DenseMatrix& a_tilde, const DenseMatrix& c_block,
                          std::span<const double> z_smooth, std::span<const double> z_flagged) {
    const std::size_t ns = a_tilde.rows();
    const std::size_t nf = z_flagged.size();
    if (!a_tilde.is_square()) throw std::invalid_argument("block_solve: A~ must be square");
    if (z_smooth.size() != ns) throw std::invalid_argument("block_solve: z length mismatch");
    if (c_block.rows() != nf || c_block.cols() != ns)
        throw std::invalid_argument("block_solve: C must be flagged x smooth");

    BlockSolution sol;
    sol.u = ns ? lu_solve(a_tilde, z_smooth) : std::vector<double>{};
    sol.u_prime.assign(z_flagged.begin(), z_flagged.end());
    if (ns) {
        const auto cu = c_block.multiply(sol.u);
        for (std::size_t i = 0; i < nf; ++i) sol.u_prime[i] -= cu[i];
    }
    return sol;
}

DenseMatrix assemble_block_matrix(const DenseMatrix& a_tilde, const DenseMatrix& c_block) {
    const std::size_t ns = a_tilde.rows();
    const std::size_t nf = c_block.rows();
    if (!a_tilde.is_square() || (nf > 0 && c_block.cols() != ns))
        throw std::invalid_argument("assemble_block_matrix: incompatible blocks");
    DenseMatrix m(ns + nf, ns + nf);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j) m(i, j) = a_tilde(i, j);
    for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t j = 0; j < ns; ++j) m(ns + i, j) = c_block(i, j);
        m(ns + i, ns + i) = 1.0;
    }
    return m;
}

double condition_bound_inf(const DenseMatrix& a_tilde, const DenseMatrix& c_block) {
    if (!a_tilde.is_square() || a_tilde.rows() == 0)
        throw std::invalid_argument("condition_bound_inf: A~ must be non-empty and square");
    const double a_norm = a_tilde.norm_inf();
    const double a_inv_norm = LuFactorization(a_tilde).inverse().norm_inf();
    const double c_norm = c_block.rows() ? c_block.norm_inf() : 0.0;
    return a_norm * a_inv_norm * std::max(1.0, (1.0 + c_norm) / a_norm) *
           std::max(1.0, c_norm + 1.0 / a_inv_norm);
}

} // namespace rbfdd
