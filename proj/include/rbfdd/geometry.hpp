#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rbfdd {

/// A point in one or two dimensions. 1D points keep y = 0.
using Point = std::array<double, 2>;

enum class NodeKind { uniform, halton, custom };

double distance(const Point& a, const Point& b);

/**
 * Immutable set of pairwise-distinct interpolation nodes in 1D or 2D.
 *
 * Uniform 2D sets remember their grid shape; point (ix, iy) is stored at
 * index iy * nx + ix.
 */
class NodeSet {
public:
    NodeSet(int dim, std::vector<Point> coords, NodeKind kind = NodeKind::custom,
            std::array<std::size_t, 2> grid_counts = {0, 0});

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size(); }
    NodeKind kind() const noexcept { return kind_; }
    const Point& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const Point> points() const noexcept { return coords_; }

    /// Per-axis counts for uniform grids, {0, 0} otherwise.
    std::array<std::size_t, 2> grid_counts() const noexcept { return grid_counts_; }

    bool is_sorted_1d() const;
    /// Ascending copy of a 1D set (same kind).
    NodeSet sorted_1d() const;

    /// Largest and mean gap between consecutive sorted 1D nodes.
    double max_gap_1d() const;
    double mean_gap_1d() const;

    double min_pairwise_distance() const;

private:
    int dim_;
    std::vector<Point> coords_;
    NodeKind kind_;
    std::array<std::size_t, 2> grid_counts_;
};

struct HaltonConfig {
    int dim = 1;
    std::uint64_t skip = 0;
    std::uint64_t leap = 0;
    std::vector<unsigned> bases{2};

    /// Bases 2 (1D) or 2,3 (2D) with the given skip/leap.
    static HaltonConfig standard(int dim, std::uint64_t skip = 0, std::uint64_t leap = 0);
    void validate() const;
};

struct StencilInfo {
    std::size_t center = 0;
    std::vector<std::size_t> neighbors; // includes center
    double h_loc = 0.0;
};

double radical_inverse(std::uint64_t index, unsigned base);

NodeSet uniform_grid(int dim, const Point& lower, const Point& upper,
                     std::array<std::size_t, 2> counts);

/// Point k is the radical-inverse vector at index skip + k * (leap + 1).
NodeSet halton_points(const HaltonConfig& config, std::size_t n);

/// The k nodes closest to `center`; ties go to the lower index.
StencilInfo nearest_neighbors(const NodeSet& nodes, std::size_t center, std::size_t k);

enum class GapFill { uniform, halton };

/**
 * Sorted 1D nodes plus `per_gap` interior points in every consecutive gap.
 * Halton mode places the gap points at the radical inverses of indices
 * (k+1)(leap+1), k = 0..per_gap-1, sorted and mapped into the open gap.
 */
NodeSet eval_points_between(const NodeSet& nodes, std::size_t per_gap, GapFill mode,
                            const HaltonConfig& halton = HaltonConfig::standard(1));

void write_nodes_csv(std::ostream& out, const NodeSet& nodes);
NodeSet read_nodes_csv(std::istream& in, int dim);

} // namespace rbfdd
