// weldbench: configuration-driven thermoelastic welding runs, scaling
// sweeps, and mesh/coarse-space size queries.
//
// Exit codes: 0 success, 1 nonconvergence, 2 invalid config, 3 runtime failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weldsim/errors.hpp"
#include "weldsim/simulation.hpp"

namespace {

struct CommonFlags {
    std::string prec;
    int overlap = -1;
    int steps = -1;
    std::string out_dir;
    bool vtk = false;
    int threads = -1;
};

void apply_flags(weldsim::RunConfig& cfg, const CommonFlags& flags) {
    if (!flags.prec.empty()) { cfg.prec = weldsim::prec_kind_from_string(flags.prec); }
    if (flags.overlap >= 0) { cfg.overlap = flags.overlap; }
    if (flags.steps > 0) { cfg.n_steps = flags.steps; }
    if (!flags.out_dir.empty()) { cfg.out_dir = flags.out_dir; }
    if (flags.vtk) { cfg.write_vtk = true; }
    if (flags.threads >= 0) { cfg.threads = flags.threads; }
}

void print_run_summary(const weldsim::RunReport& report) {
    std::cout << weldsim::summary_header() << weldsim::summary_row(report);
    for (const auto& w : report.warnings) { std::cerr << "warning: " << w << "\n"; }
    if (!report.converged) {
        std::cerr << "nonconvergence: " << report.failure << "\n";
    }
}

int run_command(const std::string& config_path, const CommonFlags& flags) {
    weldsim::RunConfig cfg = weldsim::load_config(config_path);
    apply_flags(cfg, flags);
    const weldsim::RunReport report = weldsim::run(cfg);
    print_run_summary(report);
    if (!report.converged) {
        return report.failure.find("GMRES") != std::string::npos ||
                       report.failure.find("Newton") != std::string::npos ||
                       report.failure.find("converge") != std::string::npos
                   ? 1
                   : 3;
    }
    return 0;
}

int sweep_command(const std::vector<std::string>& config_paths, const std::string& mode_str,
                  CommonFlags flags) {
    const weldsim::SweepMode mode =
        mode_str == "weak" ? weldsim::SweepMode::weak : weldsim::SweepMode::strong;

    // --prec may be a comma list here: each config expands over all kinds.
    std::vector<weldsim::PrecKind> kinds;
    if (!flags.prec.empty()) {
        std::istringstream ss(flags.prec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            kinds.push_back(weldsim::prec_kind_from_string(tok));
        }
    }
    flags.prec.clear();

    std::vector<weldsim::RunConfig> configs;
    for (const auto& path : config_paths) {
        weldsim::RunConfig cfg = weldsim::load_config(path);
        apply_flags(cfg, flags);
        if (kinds.size() == 1) { cfg.prec = kinds.front(); }
        configs.push_back(std::move(cfg));
    }
    const weldsim::SweepResult result =
        weldsim::sweep(configs, mode, kinds.size() > 1 ? kinds : std::vector<weldsim::PrecKind>{});
    std::cout << result.csv;
    if (!flags.out_dir.empty()) {
        std::filesystem::create_directories(flags.out_dir);
        std::ofstream os(flags.out_dir + "/sweep.csv");
        os << result.csv;
    }
    return result.all_converged ? 0 : 1;
}

int mesh_info_command(const std::string& config_path) {
    const weldsim::RunConfig cfg = weldsim::load_config(config_path);
    const weldsim::MeshInfo info = weldsim::mesh_info(cfg);
    std::cout << "n_elems " << info.n_elems[0] << " " << info.n_elems[1] << " " << info.n_elems[2]
              << "\n";
    std::cout << "grid " << info.grid[0] << " " << info.grid[1] << " " << info.grid[2] << "\n";
    std::cout << "nSubdomains " << info.n_subdomains << "\n";
    std::cout << "nNodes " << info.n_nodes << "\n";
    std::cout << "nDoFs " << info.n_dofs << "\n";
    std::cout << "M " << info.m_components << " (faces " << info.faces << ", edges " << info.edges
              << ", vertices " << info.vertices << ")\n";
    std::cout << "nDoFs_Gamma " << info.n_dofs_gamma << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermoelastic laser welding bench: runs, sweeps, mesh info"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string run_config;
    std::vector<std::string> sweep_configs;
    std::string sweep_mode = "weak";
    std::string info_config;

    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config file");
    run_cmd->add_option("config", run_config, "config file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "run a weak/strong scaling sweep");
    sweep_cmd->add_option("configs", sweep_configs, "config files")->expected(-1);
    sweep_cmd->add_option("--mode", sweep_mode, "weak|strong")
        ->check(CLI::IsMember({"weak", "strong"}));

    auto* info_cmd = app.add_subcommand("mesh-info", "print nDoFs/nDoFs_Gamma/M without solving");
    info_cmd->add_option("config", info_config, "config file")->required();

    for (auto* cmd : {run_cmd, sweep_cmd}) {
        cmd->add_option("--prec", flags.prec,
                        "preconditioner: none|one_level|gdsw|egdsw (sweep: comma list)");
        cmd->add_option("--overlap", flags.overlap, "overlap width in element layers");
        cmd->add_option("--steps", flags.steps, "number of time steps");
        cmd->add_option("--out", flags.out_dir, "output directory");
        cmd->add_flag("--vtk", flags.vtk, "write VTK snapshots per step");
        cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) { return run_command(run_config, flags); }
        if (sweep_cmd->parsed()) { return sweep_command(sweep_configs, sweep_mode, flags); }
        if (info_cmd->parsed()) { return mesh_info_command(info_config); }
    } catch (const weldsim::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
