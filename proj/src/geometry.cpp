#include "rbfdd/geometry.hpp"

#include "rbfdd/csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rbfdd {

double distance(const Point& a, const Point& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

NodeSet::NodeSet(int dim, std::vector<Point> coords, NodeKind kind,
                 std::array<std::size_t, 2> grid_counts)
    : dim_(dim), coords_(std::move(coords)), kind_(kind), grid_counts_(grid_counts) {
    if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("NodeSet: dim must be 1 or 2");
    if (coords_.empty()) throw std::invalid_argument("NodeSet: empty node set");
    for (auto& p : coords_) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
            throw std::invalid_argument("NodeSet: non-finite coordinate");
        if (dim_ == 1) p[1] = 0.0;
    }
    // Exact duplicates are the only way to get a zero pairwise distance.
    std::vector<Point> sorted = coords_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("NodeSet: duplicate points");
}

bool NodeSet::is_sorted_1d() const {
    if (dim_ != 1) return false;
    return std::is_sorted(coords_.begin(), coords_.end(),
                          [](const Point& a, const Point& b) { return a[0] < b[0]; });
}

NodeSet NodeSet::sorted_1d() const {
    if (dim_ != 1) throw std::invalid_argument("sorted_1d: node set is not 1D");
    auto coords = coords_;
    std::sort(coords.begin(), coords.end());
    return NodeSet(1, std::move(coords), kind_, grid_counts_);
}

double NodeSet::max_gap_1d() const {
    if (dim_ != 1 || size() < 2) throw std::invalid_argument("max_gap_1d: need >= 2 1D nodes");
    auto s = sorted_1d();
    double gap = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) gap = std::max(gap, s[i][0] - s[i - 1][0]);
    return gap;
}

double NodeSet::mean_gap_1d() const {
    if (dim_ != 1 || size() < 2) throw std::invalid_argument("mean_gap_1d: need >= 2 1D nodes");
    auto s = sorted_1d();
    return (s[s.size() - 1][0] - s[0][0]) / static_cast<double>(s.size() - 1);
}

double NodeSet::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            best = std::min(best, distance(coords_[i], coords_[j]));
    return best;
}

HaltonConfig HaltonConfig::standard(int dim, std::uint64_t skip, std::uint64_t leap) {
    HaltonConfig c;
    c.dim = dim;
    c.skip = skip;
    c.leap = leap;
    c.bases = dim == 2 ? std::vector<unsigned>{2, 3} : std::vector<unsigned>{2};
    return c;
}

namespace {
bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
} // namespace

void HaltonConfig::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("HaltonConfig: dim must be 1 or 2");
    if (bases.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("HaltonConfig: need one base per dimension");
    for (auto b : bases)
        if (!is_prime(b)) throw std::invalid_argument("HaltonConfig: bases must be prime");
    if (dim == 2 && bases[0] == bases[1])
        throw std::invalid_argument("HaltonConfig: bases must be distinct");
}

double radical_inverse(std::uint64_t index, unsigned base) {
    double result = 0.0;
    double scale = 1.0 / base;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale /= base;
    }
    return result;
}

NodeSet uniform_grid(int dim, const Point& lower, const Point& upper,
                     std::array<std::size_t, 2> counts) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("uniform_grid: dim must be 1 or 2");
    for (int a = 0; a < dim; ++a) {
        if (counts[a] < 2) throw std::invalid_argument("uniform_grid: need >= 2 nodes per axis");
        if (!(lower[a] < upper[a])) throw std::invalid_argument("uniform_grid: degenerate interval");
    }
    auto axis = [&](int a) {
        std::vector<double> v(counts[a]);
        const double n1 = static_cast<double>(counts[a] - 1);
        for (std::size_t i = 0; i < counts[a]; ++i)
            v[i] = lower[a] + (upper[a] - lower[a]) * (static_cast<double>(i) / n1);
        v.back() = upper[a];
        return v;
    };
    std::vector<Point> pts;
    if (dim == 1) {
        for (double x : axis(0)) pts.push_back({x, 0.0});
        return NodeSet(1, std::move(pts), NodeKind::uniform, {counts[0], 1});
    }
    auto xs = axis(0);
    auto ys = axis(1);
    pts.reserve(xs.size() * ys.size());
    for (double y : ys)
        for (double x : xs) pts.push_back({x, y});
    return NodeSet(2, std::move(pts), NodeKind::uniform, {counts[0], counts[1]});
}

NodeSet halton_points(const HaltonConfig& config, std::size_t n) {
    config.validate();
    if (n < 1) throw std::invalid_argument("halton_points: n must be >= 1");
    std::vector<Point> pts(n, Point{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t index = config.skip + k * (config.leap + 1);
        for (int a = 0; a < config.dim; ++a) pts[k][a] = radical_inverse(index, config.bases[a]);
    }
    return NodeSet(config.dim, std::move(pts), NodeKind::halton);
}

StencilInfo nearest_neighbors(const NodeSet& nodes, std::size_t center, std::size_t k) {
    const std::size_t n = nodes.size();
    if (center >= n) throw std::out_of_range("nearest_neighbors: center out of range");
    if (k < 1 || k > n) throw std::invalid_argument("nearest_neighbors: need 1 <= k <= N");

    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = {distance(nodes[center], nodes[j]), j};
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());

    StencilInfo info;
    info.center = center;
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        info.neighbors.push_back(order[j].second);
        sum += order[j].first;
    }
    info.h_loc = k > 1 ? sum / static_cast<double>(k - 1) : 0.0;
    return info;
}

NodeSet eval_points_between(const NodeSet& nodes, std::size_t per_gap, GapFill mode,
                            const HaltonConfig& halton) {
    if (nodes.dim() != 1) throw std::invalid_argument("eval_points_between: 1D nodes required");
    if (!nodes.is_sorted_1d()) throw std::invalid_argument("eval_points_between: nodes not sorted");

    std::vector<double> offsets;
    if (mode == GapFill::uniform) {
        for (std::size_t m = 1; m <= per_gap; ++m)
            offsets.push_back(static_cast<double>(m) / static_cast<double>(per_gap + 1));
    } else {
        halton.validate();
        for (std::uint64_t k = 0; offsets.size() < per_gap; ++k) {
            double u = radical_inverse(halton.skip + k * (halton.leap + 1), halton.bases[0]);
            if (u > 0.0 && std::find(offsets.begin(), offsets.end(), u) == offsets.end())
                offsets.push_back(u);
        }
        std::sort(offsets.begin(), offsets.end());
    }

    std::vector<Point> pts;
    pts.reserve(nodes.size() + (nodes.size() - 1) * per_gap);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        pts.push_back(nodes[i]);
        if (i + 1 == nodes.size()) break;
        const double a = nodes[i][0];
        const double b = nodes[i + 1][0];
        for (double u : offsets) {
            double x = a + (b - a) * u;
            if (x > a && x < b) pts.push_back({x, 0.0});
        }
    }
    return NodeSet(1, std::move(pts), NodeKind::custom);
}

void write_nodes_csv(std::ostream& out, const NodeSet& nodes) {
    out << (nodes.dim() == 1 ? "# x\n" : "# x,y\n");
    for (const auto& p : nodes.points()) {
        out << csv::format_double(p[0]);
        if (nodes.dim() == 2) out << ',' << csv::format_double(p[1]);
        out << '\n';
    }
}

NodeSet read_nodes_csv(std::istream& in, int dim) {
    std::vector<Point> pts;
    for (const auto& line : csv::data_lines(in)) {
        auto fields = csv::split(line);
        if (fields.size() != static_cast<std::size_t>(dim))
            throw std::invalid_argument("read_nodes_csv: expected " + std::to_string(dim) +
                                        " fields, got '" + line + "'");
        Point p{0.0, 0.0};
        for (int a = 0; a < dim; ++a) p[a] = csv::parse_double(fields[a]);
        pts.push_back(p);
    }
    return NodeSet(dim, std::move(pts), NodeKind::custom);
}

} // namespace rbfdd
