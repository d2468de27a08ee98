#include "rbfdd/csv.hpp"
#include "rbfdd/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

struct CommonOptions {
    std::string kernels = "g,imq,w2,w4,m2,m4";
    std::string points = "uniform";
    std::string out;
    std::optional<double> eps_factor;
    double c = 1e-16;
    double cap_c = 10.0;
    double t = 2.0;
    bool block_solve = false;
    std::string cond_norm = "two";
    std::string h_rule = "max";
    bool plot = false;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--kernels", o.kernels, "Comma separated kernel list")->capture_default_str();
    cmd.add_option("--points", o.points, "uniform or halton")
        ->check(CLI::IsMember({"uniform", "halton"}))
        ->capture_default_str();
    cmd.add_option("--out", o.out, "Output file (table) or directory (fig)");
    cmd.add_option("--eps-factor", o.eps_factor, "eps = factor / h for every kernel");
    cmd.add_option("--c", o.c, "Shape floor c")->capture_default_str();
    cmd.add_option("--cap-c", o.cap_c, "Indicator scale C")->capture_default_str();
    cmd.add_option("--t", o.t, "Indicator exponent t")->capture_default_str();
    cmd.add_flag("--block-solve", o.block_solve, "Solve the DD system through the block form");
    cmd.add_option("--cond-norm", o.cond_norm, "one, two or inf")
        ->check(CLI::IsMember({"one", "two", "inf"}))
        ->capture_default_str();
    cmd.add_option("--h-rule", o.h_rule, "1D spacing used for eps: max or mean gap")
        ->check(CLI::IsMember({"max", "mean"}))
        ->capture_default_str();
    cmd.add_flag("--plot", o.plot, "Also write gnuplot scripts (fig only)");
}

std::vector<rbfdd::KernelKind> parse_kernels(const std::string& list) {
    std::vector<rbfdd::KernelKind> out;
    for (const auto& name : rbfdd::csv::split(list))
        if (!name.empty()) out.push_back(rbfdd::parse_kernel(name));
    return out;
}

void apply_common(const CommonOptions& o, rbfdd::ExperimentConfig& cfg) {
    cfg.kernels = parse_kernels(o.kernels);
    cfg.points = o.points == "halton" ? rbfdd::PointKind::halton : rbfdd::PointKind::uniform;
    if (cfg.points == rbfdd::PointKind::halton && cfg.experiment == rbfdd::Experiment::jump2d)
        cfg.halton = rbfdd::HaltonConfig::standard(2);
    cfg.eps_factor = o.eps_factor;
    cfg.adaptation.c = o.c;
    cfg.adaptation.cap_c = o.cap_c;
    cfg.adaptation.t = o.t;
    cfg.solve_path = o.block_solve ? rbfdd::SolvePath::block : rbfdd::SolvePath::direct;
    static const std::map<std::string, rbfdd::NormKind> norms{
        {"one", rbfdd::NormKind::one}, {"two", rbfdd::NormKind::two}, {"inf", rbfdd::NormKind::inf}};
    cfg.cond_norm = norms.at(o.cond_norm);
    cfg.h_rule = o.h_rule == "mean" ? rbfdd::SpacingRule::mean_gap : rbfdd::SpacingRule::max_gap;
    cfg.output = o.out;
    cfg.emit_plot_scripts = o.plot;
}

void print_curves(const std::vector<rbfdd::JumpCurve>& curves) {
    std::cout << "kernel,kappa_classical,kappa_dd,overshoot_classical,overshoot_dd\n";
    for (const auto& c : curves) {
        std::cout << rbfdd::kernel_name(c.kernel) << ',';
        if (!c.error.empty()) {
            std::cout << "error: " << c.error << '\n';
            continue;
        }
        std::cout << rbfdd::csv::format_double(c.kappa_classical) << ',' << rbfdd::csv::format_double(c.kappa_dd)
                  << ',' << rbfdd::csv::format_double(c.overshoot_classical) << ','
                  << rbfdd::csv::format_double(c.overshoot_dd) << '\n';
    }
}

void print_surfaces(const std::vector<rbfdd::JumpSurface>& surfaces) {
    std::cout << "kernel,kappa_classical,kappa_dd,max_err_classical,max_err_dd,smooth_err_classical,smooth_err_dd,"
                 "flagged\n";
    for (const auto& s : surfaces) {
        std::cout << rbfdd::kernel_name(s.kernel) << ',';
        if (!s.error.empty()) {
            std::cout << "error: " << s.error << '\n';
            continue;
        }
        using rbfdd::csv::format_double;
        std::cout << format_double(s.kappa_classical) << ',' << format_double(s.kappa_dd) << ','
                  << format_double(s.max_error_classical) << ',' << format_double(s.max_error_dd) << ','
                  << format_double(s.smooth_error_classical) << ',' << format_double(s.smooth_error_dd) << ','
                  << s.flagged << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Data-dependent RBF interpolation experiments"};
    app.require_subcommand(1);

    CommonOptions table_opts;
    std::string table_name;
    std::string levels = "7:10";
    std::string error_points = "dense";
    std::string node_count = "3x";
    auto* table = app.add_subcommand("table", "Error / condition table");
    table->add_option("name", table_name, "smooth1d")->required()->check(CLI::IsMember({"smooth1d"}));
    table->add_option("--levels", levels, "Level range a:b")->capture_default_str();
    table->add_option("--error-points", error_points, "dense (10 per gap) or dyadic (j / 2^l)")
        ->check(CLI::IsMember({"dense", "dyadic"}))
        ->capture_default_str();
    table->add_option("--node-count", node_count, "3x: 3(2^l+1) nodes, 3x1: 3*2^l+1 nodes")
        ->check(CLI::IsMember({"3x", "3x1"}))
        ->capture_default_str();
    add_common(*table, table_opts);

    CommonOptions fig_opts;
    std::string fig_name;
    std::optional<std::size_t> n;
    auto* fig = app.add_subcommand("fig", "Jump experiments (curves, surfaces, condition numbers)");
    fig->add_option("name", fig_name, "jump1d or jump2d")->required()->check(CLI::IsMember({"jump1d", "jump2d"}));
    fig->add_option("--n", n, "Nodes (jump1d) or nodes per axis (jump2d)");
    add_common(*fig, fig_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed()) {
            auto cfg = rbfdd::ExperimentConfig::defaults(rbfdd::Experiment::smooth1d);
            apply_common(table_opts, cfg);
            const auto colon = levels.find(':');
            cfg.level_min = std::stoi(levels.substr(0, colon));
            cfg.level_max = colon == std::string::npos ? cfg.level_min : std::stoi(levels.substr(colon + 1));
            cfg.error_points = error_points == "dyadic" ? rbfdd::ErrorPoints::dyadic : rbfdd::ErrorPoints::dense;
            cfg.node_count = node_count == "3x1" ? rbfdd::NodeCountRule::three_dyadic_plus_one
                                                 : rbfdd::NodeCountRule::three_times_dyadic_plus_one;
            const auto rows = rbfdd::run_smooth_table(cfg);
            rbfdd::write_table_csv(std::cout, rows);
            for (const auto& r : rows)
                if (!r.error.empty()) return 2;
            return 0;
        }

        const auto experiment = fig_name == "jump1d" ? rbfdd::Experiment::jump1d : rbfdd::Experiment::jump2d;
        auto cfg = rbfdd::ExperimentConfig::defaults(experiment);
        apply_common(fig_opts, cfg);
        if (n) cfg.n = *n;
        bool failed = false;
        if (experiment == rbfdd::Experiment::jump1d) {
            const auto result = rbfdd::run_jump_1d(cfg);
            print_curves(result.curves);
            for (const auto& c : result.curves) failed = failed || !c.error.empty();
        } else {
            const auto result = rbfdd::run_jump_2d(cfg);
            std::cout << "# centers " << result.centers << ", eval points " << result.eval_points << ", h "
                      << result.h << '\n';
            print_surfaces(result.surfaces);
            for (const auto& s : result.surfaces) failed = failed || !s.error.empty();
        }
        return failed ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "rbf-dd: " << e.what() << '\n';
        return 1;
    }
}
