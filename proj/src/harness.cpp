#include "rbfdd/harness.hpp"

#include "rbfdd/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace rbfdd {

double franke(double x, double y) {
    const double a = 9.0 * x;
    const double b = 9.0 * y;
    return 0.75 * std::exp(-0.25 * ((a - 2.0) * (a - 2.0) + (b - 2.0) * (b - 2.0))) +
           0.75 * std::exp(-(a + 1.0) * (a + 1.0) / 49.0 - (b + 1.0) / 10.0) +
           0.5 * std::exp(-0.25 * ((a - 7.0) * (a - 7.0) + (b - 3.0) * (b - 3.0))) -
           0.2 * std::exp(-(a - 4.0) * (a - 4.0) - (b - 7.0) * (b - 7.0));
}

TestFunction test_function(const std::string& name) {
    using std::numbers::pi;
    if (name == "smooth_sine")
        return {name, 1, [](const Point& p) { return 1.0 + std::sin(pi * p[0]); }, ""};
    if (name == "jump_sine")
        return {name, 1,
                [](const Point& p) {
                    return p[0] <= 2.0 / 3.0 ? std::sin(pi * p[0]) : 1.0 - std::sin(pi * p[0]);
                },
                "jump at x = 2/3"};
    if (name == "franke")
        return {name, 2, [](const Point& p) { return franke(p[0], p[1]); }, ""};
    if (name == "franke_jump")
        return {name, 2,
                [](const Point& p) {
                    const double inside = p[0] * p[0] + p[1] * p[1] - 0.09;
                    return (inside >= 0.0 ? 2.0 : -1.0) + franke(p[0], p[1]);
                },
                "jump of height 3 across x^2 + y^2 = 0.3^2"};
    throw std::invalid_argument("unknown test function '" + name + "'");
}

std::string point_kind_name(PointKind kind) { return kind == PointKind::uniform ? "uniform" : "halton"; }

ExperimentConfig ExperimentConfig::defaults(Experiment experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    switch (experiment) {
    case Experiment::smooth1d: break;
    case Experiment::jump1d: c.n = 32; break;
    case Experiment::jump2d:
        c.n = 50;
        c.per_gap = 6;
        c.halton = HaltonConfig::standard(2);
        break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (kernels.empty()) throw std::invalid_argument("config: no kernels selected");
    if (eps_factor && !(*eps_factor > 0.0)) throw std::invalid_argument("config: eps_factor must be > 0");
    AdaptationParams probe = adaptation;
    probe.eps = 1.0;
    probe.validate();
    if (experiment == Experiment::smooth1d) {
        if (level_min < 1 || level_max < level_min || level_max > 16)
            throw std::invalid_argument("config: invalid level range");
    } else if (n < 3) {
        throw std::invalid_argument("config: n must be >= 3");
    }
}

double default_eps_factor(Experiment experiment, PointKind points, KernelKind kernel) {
    const bool global = kernel == KernelKind::G || kernel == KernelKind::IMQ;
    if (!global) return 0.1;
    switch (experiment) {
    case Experiment::smooth1d: return 0.8;
    case Experiment::jump1d: return points == PointKind::uniform ? 0.5 : 0.8;
    case Experiment::jump2d: return points == PointKind::uniform ? 0.5 : 0.7;
    }
    return 0.1;
}

double eps_factor_for(const ExperimentConfig& config, KernelKind kernel) {
    return config.eps_factor ? *config.eps_factor
                             : default_eps_factor(config.experiment, config.points, kernel);
}

std::size_t smooth_table_node_count(int level, NodeCountRule rule) {
    const std::size_t dyadic = std::size_t{1} << level;
    return rule == NodeCountRule::three_times_dyadic_plus_one ? 3 * (dyadic + 1) : 3 * dyadic + 1;
}

double max_error(const TestFunction& truth, const RbfModel& model, const NodeSet& eval_points) {
    const auto values = evaluate(model, eval_points);
    double e = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        e = std::max(e, std::abs(truth(eval_points[i]) - values[i]));
    return e;
}

namespace {

std::vector<double> sample(const TestFunction& f, const NodeSet& nodes) {
    std::vector<double> y(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) y[i] = f(nodes[i]);
    return y;
}

double spacing_1d(const NodeSet& nodes, SpacingRule rule) {
    return rule == SpacingRule::max_gap ? nodes.max_gap_1d() : nodes.mean_gap_1d();
}

/// Halton points mapped affinely from [0,1) to [lo, hi) and sorted.
NodeSet halton_1d_on(const HaltonConfig& config, std::size_t n, double lo, double hi) {
    const NodeSet raw = halton_points(config, n);
    std::vector<Point> pts;
    pts.reserve(n);
    for (const auto& p : raw.points()) pts.push_back({lo + (hi - lo) * p[0], 0.0});
    std::sort(pts.begin(), pts.end());
    return NodeSet(1, std::move(pts), NodeKind::halton);
}

NodeSet restrict_to_unit_interval(const NodeSet& points) {
    std::vector<Point> kept;
    for (const auto& p : points.points())
        if (p[0] >= 0.0 && p[0] <= 1.0) kept.push_back(p);
    return NodeSet(1, std::move(kept), NodeKind::custom);
}

NodeSet dyadic_points(int level) {
    const std::size_t m = std::size_t{1} << level;
    std::vector<Point> pts(m + 1);
    for (std::size_t j = 0; j <= m; ++j) pts[j] = {static_cast<double>(j) / static_cast<double>(m), 0.0};
    return NodeSet(1, std::move(pts), NodeKind::uniform);
}

SmoothnessField field_for_1d(const NodeSet& nodes, std::span<const double> samples, PointKind points,
                             double h, const MlsConfig& mls) {
    if (points == PointKind::uniform) return indicator_uniform_1d(samples, h);
    return indicator_scattered(samples, nodes, mls);
}

double kappa_of(const DenseMatrix& a, NormKind norm) { return condition_number(a, norm).kappa; }

/// Condition number of `dd`, reusing `known` when the matrix equals `reference` entry for entry.
double kappa_of(const DenseMatrix& dd, const DenseMatrix& reference, double known, NormKind norm) {
    const auto x = dd.data();
    const auto y = reference.data();
    if (dd.rows() == reference.rows() && std::equal(x.begin(), x.end(), y.begin(), y.end())) return known;
    return kappa_of(dd, norm);
}

void ensure_directory(const std::filesystem::path& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

std::string lower_kernel_name(KernelKind kind) {
    auto s = kernel_name(kind);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

std::vector<ErrorReport> run_smooth_table(const ExperimentConfig& config) {
    if (config.experiment != Experiment::smooth1d)
        throw std::invalid_argument("run_smooth_table: experiment must be smooth1d");
    config.validate();
    const TestFunction f = test_function("smooth_sine");

    std::vector<ErrorReport> reports;
    for (KernelKind kind : config.kernels) {
        const KernelSpec kernel = KernelSpec::of(kind);
        for (int level = config.level_min; level <= config.level_max; ++level) {
            ErrorReport row;
            row.level = level;
            row.kernel = kind;
            row.points = config.points;
            try {
                const std::size_t n = smooth_table_node_count(level, config.node_count);
                row.n = n;
                const NodeSet nodes =
                    config.points == PointKind::uniform
                        ? uniform_grid(1, {-1.0, 0.0}, {2.0, 0.0}, {n, 1})
                        : halton_1d_on(config.halton, n, -1.0, 2.0);
                const double h = spacing_1d(nodes, config.h_rule);
                AdaptationParams params = config.adaptation;
                params.eps = eps_factor_for(config, kind) / h;

                const auto y = sample(f, nodes);
                const SmoothnessField field = field_for_1d(nodes, y, config.points, h, config.mls);
                const NodeSet eval =
                    config.error_points == ErrorPoints::dyadic
                        ? dyadic_points(level)
                        : restrict_to_unit_interval(eval_points_between(nodes, config.per_gap, GapFill::uniform));

                const RbfModel classical = fit(nodes, y, kernel, params, nullptr);
                const DenseMatrix a = assemble_classical(nodes, kernel, params.eps);
                row.kappa_classical = kappa_of(a, config.cond_norm);
                row.e_classical = max_error(f, classical, eval);

                const RbfModel dd = fit(nodes, y, kernel, params, &field, config.solve_path);
                row.kappa_dd = kappa_of(system_matrix(dd), a, row.kappa_classical, config.cond_norm);
                row.e_dd = max_error(f, dd, eval);
                row.smooth_count = dd.shapes.smooth_count;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            reports.push_back(std::move(row));
        }
    }

    if (!config.output.empty()) {
        if (config.output.has_parent_path()) ensure_directory(config.output.parent_path());
        auto out = open_output(config.output);
        write_table_csv(out, reports);
    }
    return reports;
}

void write_table_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
    const bool any_error =
        std::any_of(reports.begin(), reports.end(), [](const ErrorReport& r) { return !r.error.empty(); });
    out << "level,kernel,points,E_classical,kappa_classical,E_dd,kappa_dd";
    if (any_error) out << ",error";
    out << '\n';
    for (const auto& r : reports) {
        out << r.level << ',' << kernel_name(r.kernel) << ',' << point_kind_name(r.points) << ','
            << csv::format_double(r.e_classical) << ',' << csv::format_double(r.kappa_classical) << ','
            << csv::format_double(r.e_dd) << ',' << csv::format_double(r.kappa_dd);
        if (any_error) {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << ',' << msg;
        }
        out << '\n';
    }
}

std::vector<ErrorReport> read_table_csv(std::istream& in) {
    const auto table = csv::read_table(in);
    std::vector<ErrorReport> reports;
    for (const auto& f : table.rows) {
        if (f.size() < 7) throw std::invalid_argument("read_table_csv: short row");
        ErrorReport r;
        r.level = std::stoi(f[0]);
        r.kernel = parse_kernel(f[1]);
        r.points = f[2] == "halton" ? PointKind::halton : PointKind::uniform;
        r.e_classical = csv::parse_double(f[3]);
        r.kappa_classical = csv::parse_double(f[4]);
        r.e_dd = csv::parse_double(f[5]);
        r.kappa_dd = csv::parse_double(f[6]);
        if (f.size() > 7) r.error = f[7];
        reports.push_back(std::move(r));
    }
    return reports;
}

double overshoot(std::span<const double> values, std::span<const double> truth) {
    if (values.size() != truth.size() || truth.empty())
        throw std::invalid_argument("overshoot: length mismatch");
    const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
    double worst = 0.0;
    for (double v : values) worst = std::max(worst, cutoff_plus(v - *hi) + cutoff_plus(*lo - v));
    return worst;
}

void write_conditions_csv(std::ostream& out, const std::vector<JumpCurve>& curves) {
    out << "kernel,kappa_classical,kappa_dd\n";
    for (const auto& c : curves)
        out << kernel_name(c.kernel) << ',' << csv::format_double(c.kappa_classical) << ','
            << csv::format_double(c.kappa_dd) << '\n';
}

void write_conditions_csv(std::ostream& out, const std::vector<JumpSurface>& surfaces) {
    out << "kernel,kappa_classical,kappa_dd\n";
    for (const auto& s : surfaces)
        out << kernel_name(s.kernel) << ',' << csv::format_double(s.kappa_classical) << ','
            << csv::format_double(s.kappa_dd) << '\n';
}

namespace {

void write_jump1d_outputs(const ExperimentConfig& config, const Jump1dResult& result) {
    const auto& dir = config.output;
    ensure_directory(dir);
    const std::string stem = "jump1d_" + point_kind_name(config.points);
    {
        auto out = open_output(dir / (stem + "_conditions.csv"));
        write_conditions_csv(out, result.curves);
    }
    {
        auto out = open_output(dir / (stem + "_indicators.csv"));
        const auto& flags = result.curves.empty() ? std::vector<int>{} : result.curves.front().psi_flags;
        write_field_csv(out, result.field, result.nodes, flags);
    }
    for (const auto& c : result.curves) {
        if (!c.error.empty()) continue;
        auto out = open_output(dir / (stem + "_" + lower_kernel_name(c.kernel) + ".csv"));
        out << "x,g,classical,dd\n";
        for (std::size_t i = 0; i < result.eval_points.size(); ++i)
            out << csv::format_double(result.eval_points[i][0]) << ',' << csv::format_double(result.truth[i])
                << ',' << csv::format_double(c.classical[i]) << ',' << csv::format_double(c.dd[i]) << '\n';
    }
    if (config.emit_plot_scripts) {
        auto gp = open_output(dir / (stem + ".gp"));
        gp << "set datafile separator ','\nset key top right\n";
        for (const auto& c : result.curves) {
            if (!c.error.empty()) continue;
            const std::string file = stem + "_" + lower_kernel_name(c.kernel) + ".csv";
            gp << "set terminal pngcairo size 800,600\nset output '" << stem << "_" << lower_kernel_name(c.kernel)
               << ".png'\nset title '" << kernel_name(c.kernel) << "'\nplot '" << file
               << "' every ::1 using 1:2 with lines title 'g', '' every ::1 using 1:3 with lines title 'RBF', "
                  "'' every ::1 using 1:4 with lines title 'DD-RBF'\n";
        }
    }
}

} // namespace

Jump1dResult run_jump_1d(const ExperimentConfig& config) {
    if (config.experiment != Experiment::jump1d)
        throw std::invalid_argument("run_jump_1d: experiment must be jump1d");
    config.validate();
    const TestFunction g = test_function("jump_sine");

    NodeSet nodes = config.points == PointKind::uniform ? uniform_grid(1, {0.0, 0.0}, {1.0, 0.0}, {config.n, 1})
                                                        : halton_1d_on(config.halton, config.n, 0.0, 1.0);
    NodeSet eval = eval_points_between(
        nodes, config.per_gap, config.points == PointKind::uniform ? GapFill::uniform : GapFill::halton,
        config.halton);
    const auto y = sample(g, nodes);
    const double h = spacing_1d(nodes, config.h_rule);
    SmoothnessField field = field_for_1d(nodes, y, config.points, h, config.mls);

    Jump1dResult result{nodes, eval, sample(g, eval), field, {}};
    for (KernelKind kind : config.kernels) {
        JumpCurve curve;
        curve.kernel = kind;
        try {
            const KernelSpec kernel = KernelSpec::of(kind);
            AdaptationParams params = config.adaptation;
            params.eps = eps_factor_for(config, kind) / h;
            curve.eps = params.eps;

            const RbfModel classical = fit(nodes, y, kernel, params, nullptr);
            const RbfModel dd = fit(nodes, y, kernel, params, &field, config.solve_path);
            const DenseMatrix a = assemble_classical(nodes, kernel, params.eps);
            curve.kappa_classical = kappa_of(a, config.cond_norm);
            curve.kappa_dd = kappa_of(system_matrix(dd), a, curve.kappa_classical, config.cond_norm);
            curve.classical = evaluate(classical, eval);
            curve.dd = evaluate(dd, eval);
            curve.psi_flags = dd.shapes.psi_flags;
            curve.overshoot_classical = overshoot(curve.classical, result.truth);
            curve.overshoot_dd = overshoot(curve.dd, result.truth);
        } catch (const std::exception& e) {
            curve.error = e.what();
        }
        result.curves.push_back(std::move(curve));
    }

    if (!config.output.empty()) write_jump1d_outputs(config, result);
    return result;
}

Jump2dResult run_jump_2d(const ExperimentConfig& config) {
    if (config.experiment != Experiment::jump2d)
        throw std::invalid_argument("run_jump_2d: experiment must be jump2d");
    config.validate();
    const std::size_t total = config.n * config.n;
    if (total > max_2d_centers)
        throw std::invalid_argument("run_jump_2d: refusing " + std::to_string(total) + " centres (limit " +
                                    std::to_string(max_2d_centers) + ")");
    const TestFunction f1 = test_function("franke_jump");

    NodeSet nodes = [&] {
        if (config.points == PointKind::uniform) return uniform_grid(2, {0.0, 0.0}, {1.0, 1.0}, {config.n, config.n});
        HaltonConfig hc = config.halton;
        if (hc.dim != 2) hc = HaltonConfig::standard(2, hc.skip, hc.leap);
        return halton_points(hc, total);
    }();
    const double h = config.points == PointKind::uniform ? 1.0 / static_cast<double>(config.n - 1)
                                                         : 1.0 / std::sqrt(static_cast<double>(total));
    const std::size_t m = (config.n - 1) * (config.per_gap + 1) + 1;
    const NodeSet eval = uniform_grid(2, {0.0, 0.0}, {1.0, 1.0}, {m, m});

    const auto y = sample(f1, nodes);
    const auto truth = sample(f1, eval);
    const SmoothnessField field = config.points == PointKind::uniform
                                      ? indicator_uniform_2d(y, config.n, config.n, h)
                                      : indicator_scattered(y, nodes, config.mls);

    std::vector<char> far_from_jump(eval.size());
    for (std::size_t i = 0; i < eval.size(); ++i)
        far_from_jump[i] = std::abs(std::hypot(eval[i][0], eval[i][1]) - 0.3) > 5.0 * h;

    Jump2dResult result;
    result.centers = total;
    result.eval_points = eval.size();
    result.h = h;
    if (!config.output.empty()) ensure_directory(config.output);
    const std::string stem = "jump2d_" + point_kind_name(config.points);

    for (KernelKind kind : config.kernels) {
        JumpSurface s;
        s.kernel = kind;
        try {
            const KernelSpec kernel = KernelSpec::of(kind);
            AdaptationParams params = config.adaptation;
            params.eps = eps_factor_for(config, kind) / h;
            s.eps = params.eps;

            const RbfModel classical = fit(nodes, y, kernel, params, nullptr);
            const DenseMatrix a = assemble_classical(nodes, kernel, params.eps);
            s.kappa_classical = kappa_of(a, config.cond_norm);
            const RbfModel dd = fit(nodes, y, kernel, params, &field, config.solve_path);
            s.kappa_dd = kappa_of(system_matrix(dd), a, s.kappa_classical, config.cond_norm);
            s.flagged = nodes.size() - dd.shapes.smooth_count;

            const auto vc = evaluate(classical, eval);
            const auto vd = evaluate(dd, eval);
            for (std::size_t i = 0; i < eval.size(); ++i) {
                const double ec = std::abs(truth[i] - vc[i]);
                const double ed = std::abs(truth[i] - vd[i]);
                s.max_error_classical = std::max(s.max_error_classical, ec);
                s.max_error_dd = std::max(s.max_error_dd, ed);
                if (far_from_jump[i]) {
                    s.smooth_error_classical = std::max(s.smooth_error_classical, ec);
                    s.smooth_error_dd = std::max(s.smooth_error_dd, ed);
                }
            }
            if (!config.output.empty()) {
                auto out = open_output(config.output / (stem + "_" + lower_kernel_name(kind) + ".csv"));
                out << "x,y,f1,classical,dd,err_classical,err_dd\n";
                for (std::size_t i = 0; i < eval.size(); ++i)
                    out << csv::format_double(eval[i][0]) << ',' << csv::format_double(eval[i][1]) << ','
                        << csv::format_double(truth[i]) << ',' << csv::format_double(vc[i]) << ','
                        << csv::format_double(vd[i]) << ',' << csv::format_double(std::abs(truth[i] - vc[i]))
                        << ',' << csv::format_double(std::abs(truth[i] - vd[i])) << '\n';
            }
        } catch (const std::exception& e) {
            s.error = e.what();
        }
        result.surfaces.push_back(std::move(s));
    }

    if (!config.output.empty()) {
        auto out = open_output(config.output / (stem + "_conditions.csv"));
        write_conditions_csv(out, result.surfaces);
        auto ind = open_output(config.output / (stem + "_indicators.csv"));
        write_field_csv(ind, field, nodes);
        if (config.emit_plot_scripts) {
            auto gp = open_output(config.output / (stem + ".gp"));
            gp << "set datafile separator ','\nset view map\nset pm3d at b\nunset surface\n";
            for (const auto& s : result.surfaces) {
                if (!s.error.empty()) continue;
                const std::string name = stem + "_" + lower_kernel_name(s.kernel);
                gp << "set terminal pngcairo size 1200,500\nset output '" << name << ".png'\n"
                   << "set multiplot layout 1,2\nset title 'RBF " << kernel_name(s.kernel) << " error'\n"
                   << "splot '" << name << ".csv' every ::1 using 1:2:6 notitle\n"
                   << "set title 'DD-RBF " << kernel_name(s.kernel) << " error'\n"
                   << "splot '" << name << ".csv' every ::1 using 1:2:7 notitle\nunset multiplot\n";
            }
        }
    }
    return result;
}

} // namespace rbfdd
