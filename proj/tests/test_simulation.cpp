#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "weldsim/simulation.hpp"

using namespace weldsim;

namespace {

// A quick-running welding problem: coarse mesh, 4 subdomains, 2 steps.
RunConfig small_run_config() {
    return parse_config_string(R"(
[mesh]
extent = 60 20 1
grid = 2 2 1
local_elems = 5 3 2

[decomposition]
overlap = 1
prec = gdsw

[time]
dt = 0.05
n_steps = 2

[run]
threads = 2
)");
}

} // namespace

TEST_CASE("run completes and reports consistent statistics") {
    const RunReport report = run(small_run_config());
    REQUIRE(report.converged);
    CHECK(report.info.n_dofs == 11 * 7 * 3 * 4);
    CHECK(report.loop.steps.size() == 2);
    int tot = 0, solves = 0;
    for (const auto& s : report.loop.steps) {
        CHECK(s.converged);
        CHECK(s.it_newton == static_cast<int>(s.gmres_iters.size()));
        for (int g : s.gmres_iters) { tot += g; }
        solves += static_cast<int>(s.gmres_iters.size());
    }
    CHECK(report.it_tot() == tot);
    CHECK(report.it_newton_total() == solves);
    CHECK(report.it_avg() == rounded_average(tot, solves));
}

TEST_CASE("identical configs give identical reports (deterministic rerun)") {
    const RunReport a = run(small_run_config());
    const RunReport b = run(small_run_config());
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(run_report_csv(a) == run_report_csv(b));
    CHECK(summary_row(a) == summary_row(b));
    REQUIRE(a.loop.steps.size() == b.loop.steps.size());
    for (std::size_t i = 0; i < a.loop.steps.size(); ++i) {
        CHECK(a.loop.steps[i].gmres_iters == b.loop.steps[i].gmres_iters);
    }
}

TEST_CASE("prec none with a single subdomain matches plain GMRES") {
    RunConfig cfg = small_run_config();
    cfg.grid_spec = {{1, 1, 1}};
    cfg.local_elems = {{10, 6, 2}};
    cfg.prec = PrecKind::none;
    cfg.n_steps = 1;
    const RunReport plain = run(cfg);
    REQUIRE(plain.converged);
    CHECK(plain.info.n_subdomains == 1);
    CHECK(plain.it_tot() > 0);

    // Rerun: the report is a pure function of the config.
    const RunReport again = run(cfg);
    CHECK(plain.it_tot() == again.it_tot());
}

TEST_CASE("run writes report.csv and vtk snapshots") {
    RunConfig cfg = small_run_config();
    cfg.n_steps = 1;
    cfg.out_dir = "test_sim_out";
    cfg.write_vtk = true;
    std::filesystem::remove_all(cfg.out_dir);
    const RunReport report = run(cfg);
    REQUIRE(report.converged);
    CHECK(std::filesystem::exists("test_sim_out/report.csv"));
    CHECK(std::filesystem::exists("test_sim_out/state_1.vtk"));
    std::ifstream csv("test_sim_out/report.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "step,time,it_N,it_Tot,it_Avg,converged");
    std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("weak sweep emits one row per config and preconditioner") {
    RunConfig a = small_run_config();
    a.n_steps = 1;
    RunConfig b = a;
    b.grid_spec = {{2, 1, 1}};
    const SweepResult result =
        sweep({b, a}, SweepMode::weak, {PrecKind::one_level, PrecKind::gdsw});
    CHECK(result.reports.size() == 4);
    // Header plus 4 rows.
    int lines = 0;
    for (char c : result.csv) { lines += c == '\n' ? 1 : 0; }
    CHECK(lines == 5);
    CHECK(result.all_converged);
}

TEST_CASE("strong sweep keeps nDoFs fixed across rows") {
    RunConfig a = parse_config_string(R"(
[mesh]
n_elems = 8 4 2
[decomposition]
grid = 2 1 1
prec = one_level
[time]
n_steps = 1
)");
    RunConfig b = a;
    b.decomp_grid = {{4, 2, 1}};
    const SweepResult result = sweep({a, b}, SweepMode::strong);
    REQUIRE(result.reports.size() == 2);
    CHECK(result.reports[0].info.n_dofs == result.reports[1].info.n_dofs);
    CHECK(result.reports[0].info.n_subdomains == 2);
    CHECK(result.reports[1].info.n_subdomains == 8);
}
