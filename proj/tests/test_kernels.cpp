#include "rbfdd/interpolator.hpp"
#include "rbfdd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace rbfdd;

TEST_CASE("closed forms at s = 0.5") {
    const double s = 0.5;
    CHECK(kernel_eval(KernelKind::G, s) == doctest::Approx(std::exp(-0.25)));
    CHECK(kernel_eval(KernelKind::IMQ, s) == doctest::Approx(1.0 / std::sqrt(1.25)));
    CHECK(kernel_eval(KernelKind::M2, s) == doctest::Approx(std::exp(-0.5) * 1.5));
    CHECK(kernel_eval(KernelKind::M4, s) == doctest::Approx(std::exp(-0.5) * (3.0 + 1.5 + 0.25)));
    CHECK(kernel_eval(KernelKind::W2, s) == doctest::Approx(std::pow(0.5, 4) * 3.0));
    CHECK(kernel_eval(KernelKind::W4, s) == doctest::Approx(std::pow(0.5, 6) * (35 * 0.25 + 9 + 3)));
}

TEST_CASE("values at zero") {
    for (auto k : all_kernels) {
        const auto spec = KernelSpec::of(k);
        CHECK(kernel_eval(k, 0.0) == spec.value_at_zero);
        CHECK(kernel_at(spec, 3.0, 0.0) == spec.value_at_zero);
    }
    CHECK(KernelSpec::of(KernelKind::M4).value_at_zero == 3.0);
    CHECK(KernelSpec::of(KernelKind::W4).value_at_zero == 3.0);
    CHECK(KernelSpec::of(KernelKind::G).value_at_zero == 1.0);
}

TEST_CASE("kernel metadata") {
    CHECK(KernelSpec::of(KernelKind::G).continuity == continuity_infinite);
    CHECK(KernelSpec::of(KernelKind::W2).compact_support);
    CHECK(KernelSpec::of(KernelKind::W4).continuity == 4);
    CHECK(KernelSpec::of(KernelKind::M2).continuity == 2);
    CHECK_FALSE(KernelSpec::of(KernelKind::M4).compact_support);
}

TEST_CASE("wendland kernels vanish beyond the support") {
    CHECK(kernel_eval(KernelKind::W2, 1.0) == 0.0);
    CHECK(kernel_eval(KernelKind::W4, 1.5) == 0.0);
    CHECK(kernel_eval(KernelKind::W2, 0.999) > 0.0);
}

TEST_CASE("infinite argument and delta limit") {
    for (auto k : all_kernels) CHECK(kernel_eval(k, std::numeric_limits<double>::infinity()) == 0.0);
    const double huge = 1e16;
    for (auto k : {KernelKind::G, KernelKind::M2, KernelKind::M4, KernelKind::W2, KernelKind::W4})
        CHECK(kernel_at(KernelSpec::of(k), huge, 1.0 / 32.0) == 0.0);
    // algebraic decay: tiny but not zero
    const double imq = kernel_at(KernelSpec::of(KernelKind::IMQ), huge, 1.0 / 32.0);
    CHECK(imq > 0.0);
    CHECK(imq < 1e-13);
}

TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(kernel_eval(KernelKind::G, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(kernel_at(KernelSpec::of(KernelKind::G), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(kernel_at(KernelSpec::of(KernelKind::G), 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel("gauss"), std::invalid_argument);
}

TEST_CASE("names round trip") {
    for (auto k : all_kernels) CHECK(parse_kernel(kernel_name(k)) == k);
    CHECK(parse_kernel("imq") == KernelKind::IMQ);
    CHECK(parse_kernel("W4") == KernelKind::W4);
}

TEST_CASE("random monotone decrease in s") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (auto k : all_kernels)
        for (int trial = 0; trial < 500; ++trial) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            CHECK(kernel_eval(k, a) >= kernel_eval(k, b));
        }
}

TEST_CASE("classical matrices are symmetric positive definite") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(25);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const NodeSet s(2, pts);
    for (auto k : all_kernels) {
        auto a = assemble_classical(s, KernelSpec::of(k), 3.0);
        CHECK(a.is_symmetric());
        // Cholesky by hand; every pivot must stay positive
        const std::size_t n = a.rows();
        bool spd = true;
        for (std::size_t j = 0; j < n && spd; ++j) {
            double d = a(j, j);
            for (std::size_t p = 0; p < j; ++p) d -= a(j, p) * a(j, p);
            if (!(d > 0.0)) {
                spd = false;
                break;
            }
            a(j, j) = std::sqrt(d);
            for (std::size_t i = j + 1; i < n; ++i) {
                double v = a(i, j);
                for (std::size_t p = 0; p < j; ++p) v -= a(i, p) * a(j, p);
                a(i, j) = v / a(j, j);
            }
        }
        CHECK_MESSAGE(spd, kernel_name(k));
    }
}
