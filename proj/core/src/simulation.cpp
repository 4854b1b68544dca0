#include "weldsim/simulation.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "weldsim/errors.hpp"
#include "weldsim/vtk_writer.hpp"

namespace weldsim {

MeshInfo mesh_info(const RunConfig& cfg) {
    MeshInfo info;
    info.n_elems = cfg.resolved_n_elems();
    info.grid = cfg.resolved_grid();

    const HexMesh mesh = build_hex_mesh(cfg.extent, info.n_elems);
    info.n_nodes = mesh.n_nodes;
    info.n_dofs = mesh.n_dofs;

    DomainDecomposition dd = partition(mesh, info.grid);
    info.n_subdomains = dd.n_subdomains;
    // Classification-level interface: no node carries Dirichlet conditions
    // in all four fields (clamped faces constrain u only, the pool theta
    // only), so the all-field exclusion set is empty.
    classify_interface(mesh, dd, {});
    info.m_components = static_cast<int>(dd.components.size());
    info.n_dofs_gamma = 4 * info.m_components;
    for (const auto& c : dd.components) {
        switch (c.kind) {
            case ComponentKind::face: ++info.faces; break;
            case ComponentKind::edge: ++info.edges; break;
            case ComponentKind::vertex: ++info.vertices; break;
        }
    }
    return info;
}

namespace {

std::string marker_or(int value, bool converged) {
    return converged ? std::to_string(value) : "x";
}

} // namespace

std::string run_report_csv(const RunReport& report) {
    std::ostringstream os;
    os << "step,time,it_N,it_Tot,it_Avg,converged\n";
    for (const auto& s : report.loop.steps) {
        os << s.step << "," << s.time << ",";
        if (s.converged) {
            os << s.it_newton << "," << s.it_tot << "," << s.it_avg << ",1\n";
        } else {
            os << "x,x,x,0\n";
        }
    }
    return os.str();
}

std::string summary_header() {
    return "nSubdomains,nDoFs,nDoFs_Gamma,prec,it_Avg,it_N,it_Tot\n";
}

std::string summary_row(const RunReport& report) {
    std::ostringstream os;
    os << report.info.n_subdomains << "," << report.info.n_dofs << ","
       << report.info.n_dofs_gamma << "," << to_string(report.config.prec) << ","
       << marker_or(report.it_avg(), report.converged) << ","
       << marker_or(report.it_newton_total(), report.converged) << ","
       << marker_or(report.it_tot(), report.converged) << "\n";
    return os.str();
}

RunReport run(const RunConfig& cfg_in) {
    const auto t_start = std::chrono::steady_clock::now();

    RunReport report;
    report.config = cfg_in;
    RunConfig& cfg = report.config;
    if (cfg.pool.shape == MeltPool::Shape::triangulated && cfg.pool.triangles.empty()) {
        cfg.pool.triangles = load_stl_pool(cfg.pool_stl);
    }

    report.info = mesh_info(cfg);
    const HexMesh mesh = build_hex_mesh(cfg.extent, report.info.n_elems);
    DomainDecomposition dd = partition(mesh, report.info.grid);
    extend_overlap(mesh, dd, cfg.overlap);
    classify_interface(mesh, dd, {});

    const std::string footprint =
        check_pool_footprint(mesh, cfg.pool, cfg.n_steps * cfg.dt);
    if (!footprint.empty()) { report.warnings.push_back(footprint); }

    SimulationState state = SimulationState::uniform(mesh.n_nodes, cfg.material.theta0, cfg.dt);

    const int n_threads = cfg.threads;
    int dropped = 0;
    std::string prec_summary;
    PrecBuilder builder;
    if (cfg.prec != PrecKind::none) {
        builder = [&mesh, &dd, &cfg, &dropped, &prec_summary,
                   n_threads](const BlockSystem& sys, const DofMap& dofmap) {
            auto prec = std::make_shared<const SchwarzPreconditioner>(
                build_schwarz(cfg.prec, sys.K, mesh, dd, dofmap, n_threads));
            if (prec->coarse) { dropped = static_cast<int>(prec->coarse->dropped.size()); }
            prec_summary = prec->describe();
            return make_prec_operator(std::move(prec), n_threads);
        };
    }

    NewtonOptions options;
    options.abs_tol = cfg.newton_abs_tol;
    options.max_newton = cfg.max_newton;
    options.gmres = cfg.gmres;

    ClampSpec clamp;  // y = 0 and y = extent_y faces

    std::function<void(int, const SimulationState&)> on_step;
    if (!cfg.out_dir.empty() && cfg.write_vtk) {
        std::filesystem::create_directories(cfg.out_dir);
        on_step = [&mesh, &cfg](int step, const SimulationState& s) {
            std::ostringstream name;
            name << cfg.out_dir << "/state_" << step << ".vtk";
            write_vtk(mesh, s, name.str());
        };
    }

    try {
        report.loop = time_loop(mesh, dd, cfg.material, cfg.pool, clamp, state, cfg.n_steps,
                                cfg.dt, builder, options, n_threads, on_step);
        report.converged = report.loop.converged;
        report.failure = report.loop.failure;
    } catch (const std::exception& e) {
        report.converged = false;
        report.failure = e.what();
    }
    report.dropped_coarse_columns = dropped;
    report.prec_summary = prec_summary;
    for (const auto& s : report.loop.steps) {
        for (const auto& w : s.warnings) { report.warnings.push_back(w); }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream os(cfg.out_dir + "/report.csv");
        if (os) { os << run_report_csv(report); }
        std::ofstream log(cfg.out_dir + "/run.log");
        if (log) {
            log << "nDoFs " << report.info.n_dofs << " nDoFs_Gamma " << report.info.n_dofs_gamma
                << " M " << report.info.m_components << "\n";
            if (!prec_summary.empty()) { log << prec_summary << "\n"; }
            for (const auto& w : report.warnings) { log << "warning: " << w << "\n"; }
            if (!report.failure.empty()) { log << "failure: " << report.failure << "\n"; }
            log << "wall_seconds " << report.wall_seconds << "\n";
        }
    }
    return report;
}

SweepResult sweep(const std::vector<RunConfig>& configs, SweepMode mode,
                  const std::vector<PrecKind>& prec_override) {
    // Mode consistency: weak sweeps share local_elems, strong sweeps share
    // the global element counts.
    for (std::size_t i = 1; i < configs.size(); ++i) {
        if (mode == SweepMode::weak) {
            if (!configs[0].local_elems || !configs[i].local_elems ||
                *configs[0].local_elems != *configs[i].local_elems) {
                throw ConfigError({"weak sweep requires all configs to share local_elems"});
            }
        } else {
            if (configs[0].resolved_n_elems() != configs[i].resolved_n_elems()) {
                throw ConfigError({"strong sweep requires all configs to share n_elems"});
            }
        }
    }

    SweepResult result;
    result.csv = summary_header();
    for (const auto& base : configs) {
        std::vector<PrecKind> kinds = prec_override;
        if (kinds.empty()) { kinds.push_back(base.prec); }
        for (PrecKind kind : kinds) {
            RunConfig cfg = base;
            cfg.prec = kind;
            RunReport report = run(cfg);
            result.csv += summary_row(report);
            result.all_converged = result.all_converged && report.converged;
            result.reports.push_back(std::move(report));
        }
    }
    return result;
}

} // namespace weldsim
