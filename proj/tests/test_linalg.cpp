#include "rbfdd/errors.hpp"
#include "rbfdd/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace rbfdd;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double diag = 0.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng) + (i == j ? diag : 0.0);
    return m;
}

} // namespace

TEST_CASE("norms") {
    const DenseMatrix a{{1, -2}, {3, 4}};
    CHECK(a.norm_one() == 6.0);
    CHECK(a.norm_inf() == 7.0);
    CHECK_FALSE(a.is_symmetric());
    CHECK(DenseMatrix::identity(3).is_symmetric());
}

TEST_CASE("lu solve, inverse and determinant") {
    const DenseMatrix a{{4, 1, 0}, {1, 3, 1}, {0, 2, 5}};
    const std::vector<double> x{1, -2, 3};
    const auto b = a.multiply(x);
    const auto got = lu_solve(a, b);
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(x[i]));
    const LuFactorization lu(a);
    CHECK(lu.determinant() == doctest::Approx(4 * (15 - 2) - 1 * 5));
    const auto prod = a.multiply(lu.inverse());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("singular matrices are rejected") {
    const DenseMatrix a{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(LuFactorization{a}, SingularMatrixError);
    CHECK_THROWS_AS(lu_solve(a, std::vector<double>{1, 2}), SingularMatrixError);
}

TEST_CASE("solve picks cholesky or lu and agrees with lu") {
    std::mt19937_64 rng(2);
    auto b = random_matrix(rng, 8, 8);
    DenseMatrix spd(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double s = i == j ? 8.0 : 0.0;
            for (int k = 0; k < 8; ++k) s += b(k, i) * b(k, j);
            spd(i, j) = s;
        }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < i; ++j) spd(i, j) = spd(j, i);
    std::vector<double> rhs(8, 1.0);
    const auto x1 = solve(spd, rhs);
    const auto x2 = lu_solve(spd, rhs);
    const auto x3 = solve(b, rhs);
    const auto x4 = lu_solve(b, rhs);
    for (int i = 0; i < 8; ++i) {
        CHECK(x1[i] == doctest::Approx(x2[i]).epsilon(1e-12));
        CHECK(x3[i] == x4[i]);
    }
}

TEST_CASE("condition numbers") {
    const DenseMatrix d{{2, 0}, {0, 0.5}};
    for (auto n : {NormKind::one, NormKind::two, NormKind::inf})
        CHECK(condition_number(d, n).kappa == doctest::Approx(4.0));
    const DenseMatrix a{{1, 2}, {3, 4}};
    // singular values of [[1,2],[3,4]]
    const double s1 = std::sqrt(15 + std::sqrt(221.0)), s2 = std::sqrt(15 - std::sqrt(221.0));
    CHECK(condition_number(a, NormKind::two).kappa == doctest::Approx(s1 / s2));
    CHECK(condition_number(a, NormKind::inf).kappa == doctest::Approx(7.0 * 3.0));
    CHECK(condition_number(a, NormKind::one).kappa == doctest::Approx(6.0 * 3.5));
}

TEST_CASE("symmetric indefinite matrix uses absolute eigenvalues") {
    const DenseMatrix a{{0, 2}, {2, 0}};
    CHECK(condition_number(a, NormKind::two).kappa == doctest::Approx(1.0));
}

TEST_CASE("block partition and permutation round trip") {
    const std::vector<int> flags{1, 0, 1, 1, 0};
    const auto p = block_partition(flags);
    CHECK(p.smooth_idx == std::vector<std::size_t>{0, 2, 3});
    CHECK(p.flagged_idx == std::vector<std::size_t>{1, 4});
    CHECK(p.permutation == std::vector<std::size_t>{0, 2, 3, 1, 4});
    const std::vector<double> v{10, 11, 12, 13, 14};
    const auto there = permute(v, p.permutation);
    CHECK(there == std::vector<double>{10, 12, 13, 11, 14});
    CHECK(permute(there, inverse_permutation(p.permutation)) == v);
    CHECK_THROWS(block_partition(std::vector<int>{1, 2}));
}

TEST_CASE("block solve matches a dense solve of the block matrix") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t ns = 1 + trial % 7, nf = trial % 4;
        const auto at = random_matrix(rng, ns, ns, 4.0);
        const auto c = random_matrix(rng, nf, ns);
        std::vector<double> z(ns), zp(nf);
        std::iota(z.begin(), z.end(), 1.0);
        std::iota(zp.begin(), zp.end(), -2.0);
        const auto sol = block_solve(at, c, z, zp);
        const auto m = assemble_block_matrix(at, c);
        std::vector<double> rhs(z);
        rhs.insert(rhs.end(), zp.begin(), zp.end());
        const auto dense = lu_solve(m, rhs);
        for (std::size_t i = 0; i < ns; ++i) CHECK(sol.u[i] == doctest::Approx(dense[i]).epsilon(1e-12));
        for (std::size_t i = 0; i < nf; ++i) CHECK(sol.u_prime[i] == doctest::Approx(dense[ns + i]).epsilon(1e-12));
        CHECK(LuFactorization(m).determinant() == doctest::Approx(LuFactorization(at).determinant()).epsilon(1e-10));
    }
}

TEST_CASE("all flagged: block solve returns z' unchanged") {
    const DenseMatrix empty(0, 0);
    const DenseMatrix c(2, 0);
    const std::vector<double> zp{3.0, -1.0};
    const auto sol = block_solve(empty, c, std::vector<double>{}, zp);
    CHECK(sol.u.empty());
    CHECK(sol.u_prime == zp);
}

TEST_CASE("condition bound dominates the exact block condition") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t ns = 2 + trial % 6, nf = 1 + trial % 3;
        const auto at = random_matrix(rng, ns, ns, 1.0 + trial % 5);
        const auto c = random_matrix(rng, nf, ns);
        const double exact = condition_number(assemble_block_matrix(at, c), NormKind::inf).kappa;
        CHECK(condition_bound_inf(at, c) >= exact * (1 - 1e-12));
    }
}
