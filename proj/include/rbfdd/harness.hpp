#pragma once

#include "rbfdd/adaptation.hpp"
#include "rbfdd/geometry.hpp"
#include "rbfdd/interpolator.hpp"
#include "rbfdd/kernels.hpp"
#include "rbfdd/linalg.hpp"
#include "rbfdd/smoothness.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rbfdd {

struct TestFunction {
    std::string name;
    int dim = 1;
    std::function<double(const Point&)> evaluator;
    std::string discontinuity; // empty for smooth functions

    double operator()(const Point& p) const { return evaluator(p); }
};

/// smooth_sine, jump_sine, franke, franke_jump.
TestFunction test_function(const std::string& name);

/// Franke's four-bump surface.
double franke(double x, double y);

enum class Experiment { smooth1d, jump1d, jump2d };
enum class PointKind { uniform, halton };
/// How h in eps = factor / h is measured on 1D node sets.
enum class SpacingRule { max_gap, mean_gap };
/// Where the smooth-table error is sampled inside [0, 1].
enum class ErrorPoints { dense, dyadic };
/// Node count per level for the smooth table: 3(2^l + 1) or 3 * 2^l + 1.
enum class NodeCountRule { three_times_dyadic_plus_one, three_dyadic_plus_one };

std::string point_kind_name(PointKind kind);

struct ExperimentConfig {
    Experiment experiment = Experiment::smooth1d;
    std::vector<KernelKind> kernels{all_kernels.begin(), all_kernels.end()};
    PointKind points = PointKind::uniform;
    int level_min = 7;
    int level_max = 10;
    std::size_t n = 32; // jump1d: node count; jump2d: nodes per axis (n * n total)
    std::optional<double> eps_factor; // overrides the per-kernel defaults
    AdaptationParams adaptation;      // eps is set per run from eps_factor / h
    std::size_t per_gap = 10;
    HaltonConfig halton = HaltonConfig::standard(1, 0, 38);
    MlsConfig mls;
    SolvePath solve_path = SolvePath::direct;
    NormKind cond_norm = NormKind::two;
    SpacingRule h_rule = SpacingRule::max_gap;
    ErrorPoints error_points = ErrorPoints::dense;
    NodeCountRule node_count = NodeCountRule::three_times_dyadic_plus_one;
    std::filesystem::path output; // table file or figure directory; empty = no files
    bool emit_plot_scripts = false;

    static ExperimentConfig defaults(Experiment experiment);
    void validate() const;
};

/// Shape factor used in eps = factor / h when none is configured.
double default_eps_factor(Experiment experiment, PointKind points, KernelKind kernel);

double eps_factor_for(const ExperimentConfig& config, KernelKind kernel);

std::size_t smooth_table_node_count(int level, NodeCountRule rule);

struct ErrorReport {
    int level = 0;
    std::size_t n = 0;
    KernelKind kernel = KernelKind::G;
    PointKind points = PointKind::uniform;
    double e_classical = 0.0;
    double kappa_classical = 0.0;
    double e_dd = 0.0;
    double kappa_dd = 0.0;
    std::size_t smooth_count = 0;
    std::string error; // non-empty when the row failed
};

double max_error(const TestFunction& truth, const RbfModel& model, const NodeSet& eval_points);

std::vector<ErrorReport> run_smooth_table(const ExperimentConfig& config);

void write_table_csv(std::ostream& out, const std::vector<ErrorReport>& reports);
std::vector<ErrorReport> read_table_csv(std::istream& in);

struct JumpCurve {
    KernelKind kernel = KernelKind::G;
    double eps = 0.0;
    double kappa_classical = 0.0;
    double kappa_dd = 0.0;
    std::vector<double> classical; // at eval points
    std::vector<double> dd;
    std::vector<int> psi_flags;
    double overshoot_classical = 0.0;
    double overshoot_dd = 0.0;
    std::string error;
};

struct Jump1dResult {
    NodeSet nodes;
    NodeSet eval_points;
    std::vector<double> truth; // g at eval points
    SmoothnessField field;
    std::vector<JumpCurve> curves;
};

/// Largest excursion of `values` outside [min truth, max truth].
double overshoot(std::span<const double> values, std::span<const double> truth);

Jump1dResult run_jump_1d(const ExperimentConfig& config);

struct JumpSurface {
    KernelKind kernel = KernelKind::G;
    double eps = 0.0;
    double kappa_classical = 0.0;
    double kappa_dd = 0.0;
    double max_error_classical = 0.0;
    double max_error_dd = 0.0;
    /// Max error over evaluation points farther than 5h from the jump circle.
    double smooth_error_classical = 0.0;
    double smooth_error_dd = 0.0;
    std::size_t flagged = 0;
    std::string error;
};

struct Jump2dResult {
    std::size_t centers = 0;
    std::size_t eval_points = 0;
    double h = 0.0;
    std::vector<JumpSurface> surfaces;
};

/// Refuses node sets above this size (dense N x N storage).
inline constexpr std::size_t max_2d_centers = 10000;

Jump2dResult run_jump_2d(const ExperimentConfig& config);

/// kernel,kappa_classical,kappa_dd
void write_conditions_csv(std::ostream& out, const std::vector<JumpCurve>& curves);
void write_conditions_csv(std::ostream& out, const std::vector<JumpSurface>& surfaces);

} // namespace rbfdd
