#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "weldsim/config.hpp"
#include "weldsim/newton.hpp"

namespace weldsim {

/// Static size information of a configuration (no assembly, no solve).
struct MeshInfo {
    std::array<int, 3> n_elems{};
    std::array<int, 3> grid{};
    int n_subdomains = 0;
    int n_nodes = 0;
    int n_dofs = 0;
    int m_components = 0;      ///< M
    int n_dofs_gamma = 0;      ///< 4M, classification-level coarse dimension
    int faces = 0, edges = 0, vertices = 0;
};

MeshInfo mesh_info(const RunConfig& cfg);

/// Result of one simulation run.
struct RunReport {
    RunConfig config;
    MeshInfo info;
    TimeLoopReport loop;
    int dropped_coarse_columns = 0;  ///< from the last preconditioner build
    std::string prec_summary;        ///< coarse dimensions/drops of the last build
    bool converged = false;
    std::string failure;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;  ///< informational only

    int it_tot() const { return loop.it_tot(); }
    int it_newton_total() const { return loop.it_newton_total(); }
    int it_avg() const { return loop.it_avg(); }
};

/// Execute a run: mesh -> decomposition -> classification -> time loop.
/// Writes report.csv (per-step statistics) and optional VTK snapshots to
/// config.out_dir when set. Nonconvergence is reported, not thrown.
RunReport run(const RunConfig& cfg);

enum class SweepMode { weak, strong };

/// Run every config (optionally expanded over preconditioner kinds) and
/// emit one combined CSV table, one row per run:
///   nSubdomains,nDoFs,nDoFs_Gamma,prec,it_Avg,it_N,it_Tot
/// Nonconverged entries carry the "x" marker. Weak mode requires equal
/// local_elems across configs, strong mode equal n_elems.
struct SweepResult {
    std::vector<RunReport> reports;
    std::string csv;
    bool all_converged = true;
};

SweepResult sweep(const std::vector<RunConfig>& configs, SweepMode mode,
                  const std::vector<PrecKind>& prec_override = {});

/// Per-step CSV for a single run (step,time,it_N,it_Tot,it_Avg,converged).
std::string run_report_csv(const RunReport& report);

/// The sweep-style summary row for one run.
std::string summary_row(const RunReport& report);
std::string summary_header();

} // namespace weldsim
