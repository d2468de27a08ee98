#include "rbfdd/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace rbfdd;

TEST_CASE("test functions") {
    const auto g = test_function("jump_sine");
    CHECK(g({2.0 / 3.0, 0.0}) == doctest::Approx(std::sin(2.0 * M_PI / 3.0)));
    CHECK(g({0.7, 0.0}) == doctest::Approx(1.0 - std::sin(0.7 * M_PI)));
    const auto f = test_function("smooth_sine");
    CHECK(f({0.5, 0.0}) == doctest::Approx(2.0));
    const auto fj = test_function("franke_jump");
    CHECK(fj({0.0, 0.0}) == doctest::Approx(franke(0.0, 0.0) - 1.0));
    CHECK(fj({1.0, 1.0}) == doctest::Approx(franke(1.0, 1.0) + 2.0));
    CHECK(franke(0.5, 0.5) == doctest::Approx(0.32576).epsilon(1e-4));
    CHECK_THROWS(test_function("nope"));
}

TEST_CASE("default shape factors") {
    CHECK(default_eps_factor(Experiment::smooth1d, PointKind::uniform, KernelKind::G) == 0.8);
    CHECK(default_eps_factor(Experiment::smooth1d, PointKind::uniform, KernelKind::M2) == 0.1);
    CHECK(default_eps_factor(Experiment::jump1d, PointKind::uniform, KernelKind::IMQ) == 0.5);
    CHECK(default_eps_factor(Experiment::jump1d, PointKind::halton, KernelKind::IMQ) == 0.8);
    CHECK(default_eps_factor(Experiment::jump2d, PointKind::halton, KernelKind::G) == 0.7);
    CHECK(default_eps_factor(Experiment::jump2d, PointKind::halton, KernelKind::W4) == 0.1);
    ExperimentConfig cfg;
    cfg.eps_factor = 0.3;
    CHECK(eps_factor_for(cfg, KernelKind::G) == 0.3);
}

TEST_CASE("node counts per level") {
    CHECK(smooth_table_node_count(7, NodeCountRule::three_times_dyadic_plus_one) == 387);
    CHECK(smooth_table_node_count(7, NodeCountRule::three_dyadic_plus_one) == 385);
}

TEST_CASE("overshoot metric") {
    const std::vector<double> truth{0.0, 0.5, 1.0};
    CHECK(overshoot(std::vector<double>{0.0, 0.7, 1.0}, truth) == 0.0);
    CHECK(overshoot(std::vector<double>{-0.2, 0.5, 1.1}, truth) == doctest::Approx(0.2));
    CHECK_THROWS(overshoot(std::vector<double>{1.0}, truth));
}

TEST_CASE("smooth table at one level gives identical classical and dd columns") {
    auto cfg = ExperimentConfig::defaults(Experiment::smooth1d);
    cfg.kernels = {KernelKind::G, KernelKind::W2};
    cfg.level_min = cfg.level_max = 5;
    const auto rows = run_smooth_table(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.error.empty());
        CHECK(r.n == 99);
        CHECK(r.e_classical == r.e_dd);
        CHECK(r.kappa_classical == r.kappa_dd);
        CHECK(r.smooth_count == r.n);
    }
}

TEST_CASE("table csv round trip") {
    auto cfg = ExperimentConfig::defaults(Experiment::smooth1d);
    cfg.kernels = {KernelKind::M4};
    cfg.level_min = cfg.level_max = 4;
    const auto rows = run_smooth_table(cfg);
    std::stringstream io;
    write_table_csv(io, rows);
    std::string header;
    std::getline(std::stringstream(io.str()), header);
    CHECK(header == "level,kernel,points,E_classical,kappa_classical,E_dd,kappa_dd");
    const auto back = read_table_csv(io);
    REQUIRE(back.size() == 1);
    CHECK(back[0].e_dd == rows[0].e_dd);
    CHECK(back[0].kappa_classical == rows[0].kappa_classical);
    CHECK(back[0].kernel == KernelKind::M4);
}

TEST_CASE("failed rows get an error column") {
    std::vector<ErrorReport> rows(2);
    rows[1].error = "singular, really";
    std::stringstream out;
    write_table_csv(out, rows);
    std::string header;
    std::getline(out, header);
    CHECK(header.ends_with(",error"));
}

TEST_CASE("jump1d writes its outputs and flags two nodes") {
    auto cfg = ExperimentConfig::defaults(Experiment::jump1d);
    cfg.kernels = {KernelKind::G, KernelKind::W2};
    cfg.output = std::filesystem::temp_directory_path() / "rbfdd_jump1d_test";
    cfg.emit_plot_scripts = true;
    const auto r = run_jump_1d(cfg);
    REQUIRE(r.curves.size() == 2);
    CHECK(r.eval_points.size() == 32 + 31 * 10);
    for (const auto& c : r.curves) {
        CHECK(c.error.empty());
        int flagged = 0;
        for (int f : c.psi_flags) flagged += f == 0;
        CHECK(flagged == 2);
        CHECK(c.kappa_dd <= c.kappa_classical);
    }
    CHECK(std::filesystem::exists(cfg.output / "jump1d_uniform_g.csv"));
    CHECK(std::filesystem::exists(cfg.output / "jump1d_uniform_conditions.csv"));
    CHECK(std::filesystem::exists(cfg.output / "jump1d_uniform.gp"));
    std::filesystem::remove_all(cfg.output);
}

TEST_CASE("jump1d on halton points") {
    auto cfg = ExperimentConfig::defaults(Experiment::jump1d);
    cfg.points = PointKind::halton;
    cfg.kernels = {KernelKind::IMQ};
    const auto r = run_jump_1d(cfg);
    CHECK(r.nodes.size() == 32);
    CHECK(r.nodes.is_sorted_1d());
    CHECK(r.curves[0].error.empty());
}

TEST_CASE("small jump2d run") {
    auto cfg = ExperimentConfig::defaults(Experiment::jump2d);
    cfg.n = 12;
    cfg.per_gap = 2;
    cfg.kernels = {KernelKind::W2};
    const auto r = run_jump_2d(cfg);
    CHECK(r.centers == 144);
    CHECK(r.eval_points == 34 * 34);
    REQUIRE(r.surfaces.size() == 1);
    CHECK(r.surfaces[0].error.empty());
    CHECK(r.surfaces[0].flagged > 0);
}

TEST_CASE("jump2d memory guard") {
    auto cfg = ExperimentConfig::defaults(Experiment::jump2d);
    cfg.n = 101;
    CHECK_THROWS_AS(run_jump_2d(cfg), std::invalid_argument);
}

TEST_CASE("config validation") {
    auto cfg = ExperimentConfig::defaults(Experiment::smooth1d);
    cfg.level_min = 5;
    cfg.level_max = 4;
    CHECK_THROWS(cfg.validate());
    cfg = ExperimentConfig::defaults(Experiment::jump1d);
    cfg.kernels.clear();
    CHECK_THROWS(cfg.validate());
    cfg = ExperimentConfig::defaults(Experiment::jump1d);
    cfg.eps_factor = -1.0;
    CHECK_THROWS(cfg.validate());
}
