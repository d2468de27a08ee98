#include "rbfdd/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace rbfdd;

TEST_CASE("halton base 2 first points") {
    const auto pts = halton_points(HaltonConfig::standard(1), 4);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0][0] == 0.0);
    CHECK(pts[1][0] == 0.5);
    CHECK(pts[2][0] == 0.25);
    CHECK(pts[3][0] == 0.75);
}

TEST_CASE("halton leap 38 second point") {
    const auto pts = halton_points(HaltonConfig::standard(1, 0, 38), 2);
    CHECK(pts[0][0] == 0.0);
    CHECK(pts[1][0] == doctest::Approx(0.890625).epsilon(1e-15));
}

TEST_CASE("halton 2d uses bases 2 and 3") {
    const auto pts = halton_points(HaltonConfig::standard(2), 4);
    CHECK(pts[1][0] == 0.5);
    CHECK(pts[1][1] == doctest::Approx(1.0 / 3.0));
    CHECK(pts[3][1] == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("halton config validation") {
    HaltonConfig bad = HaltonConfig::standard(2);
    bad.bases = {2, 2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.bases = {2, 4};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.bases = {2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("radical inverse") {
    CHECK(radical_inverse(1, 2) == 0.5);
    CHECK(radical_inverse(6, 2) == 0.375);
    CHECK(radical_inverse(39, 2) == 0.890625);
    CHECK(radical_inverse(5, 3) == doctest::Approx(7.0 / 9.0));
}

TEST_CASE("uniform grid endpoints and ordering") {
    const auto g = uniform_grid(1, {-1.0, 0.0}, {2.0, 0.0}, {7, 1});
    CHECK(g.size() == 7);
    CHECK(g[0][0] == -1.0);
    CHECK(g[6][0] == 2.0);
    CHECK(g.is_sorted_1d());
    CHECK(g.max_gap_1d() == doctest::Approx(0.5));

    const auto g2 = uniform_grid(2, {0.0, 0.0}, {1.0, 1.0}, {3, 4});
    CHECK(g2.size() == 12);
    CHECK(g2.grid_counts() == std::array<std::size_t, 2>{3, 4});
    CHECK(g2[1 * 3 + 2][0] == 1.0);
    CHECK(g2[1 * 3 + 2][1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("node set rejects duplicates and non-finite coordinates") {
    CHECK_THROWS_AS(NodeSet(1, {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet(1, {{std::nan(""), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet(3, {{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("gap statistics on unsorted input") {
    const NodeSet s(1, {{1.0, 0.0}, {0.0, 0.0}, {0.25, 0.0}});
    CHECK_FALSE(s.is_sorted_1d());
    CHECK(s.max_gap_1d() == doctest::Approx(0.75));
    CHECK(s.mean_gap_1d() == doctest::Approx(0.5));
    CHECK(s.min_pairwise_distance() == doctest::Approx(0.25));
    CHECK(s.sorted_1d()[1][0] == 0.25);
}

TEST_CASE("eval points between: two per gap") {
    const NodeSet s(1, {{0.0, 0.0}, {0.4, 0.0}, {1.0, 0.0}});
    const auto e = eval_points_between(s, 2, GapFill::uniform);
    const std::vector<double> want{0.0, 0.4 / 3, 0.8 / 3, 0.4, 0.6, 0.8, 1.0};
    REQUIRE(e.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(e[i][0] == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("eval points between: halton fill stays inside each gap") {
    const auto s = uniform_grid(1, {0.0, 0.0}, {1.0, 0.0}, {5, 1});
    const auto e = eval_points_between(s, 10, GapFill::halton, HaltonConfig::standard(1, 0, 38));
    CHECK(e.size() == 5 + 4 * 10);
    CHECK(e.is_sorted_1d());
    CHECK(e.min_pairwise_distance() > 0.0);
}

TEST_CASE("nearest neighbours include the centre first and are the closest") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts(60);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const NodeSet s(2, pts);
    for (std::size_t c = 0; c < s.size(); c += 7) {
        const auto st = nearest_neighbors(s, c, 5);
        REQUIRE(st.neighbors.size() == 5);
        CHECK(st.neighbors[0] == c);
        double far = 0.0, sum = 0.0;
        for (std::size_t k = 1; k < 5; ++k) {
            const double d = distance(s[c], s[st.neighbors[k]]);
            far = std::max(far, d);
            sum += d;
        }
        CHECK(st.h_loc == doctest::Approx(sum / 4));
        for (std::size_t j = 0; j < s.size(); ++j)
            if (std::find(st.neighbors.begin(), st.neighbors.end(), j) == st.neighbors.end())
                CHECK(distance(s[c], s[j]) >= far);
    }
    CHECK_THROWS(nearest_neighbors(s, 0, 61));
}

TEST_CASE("node csv round trip is bit exact") {
    const auto h = halton_points(HaltonConfig::standard(2), 25);
    std::stringstream io;
    write_nodes_csv(io, h);
    const auto back = read_nodes_csv(io, 2);
    REQUIRE(back.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(back[i] == h[i]);
}
