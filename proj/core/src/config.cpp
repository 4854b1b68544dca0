#include "weldsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "weldsim/errors.hpp"

namespace weldsim {

std::array<int, 3> RunConfig::resolved_n_elems() const {
    if (n_elems) { return *n_elems; }
    return {(*grid_spec)[0] * (*local_elems)[0], (*grid_spec)[1] * (*local_elems)[1],
            (*grid_spec)[2] * (*local_elems)[2]};
}

std::array<int, 3> RunConfig::resolved_grid() const {
    if (grid_spec) { return *grid_spec; }
    return *decomp_grid;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) { return {}; }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    std::vector<std::string> issues;

    bool parse_double(const std::string& key, const std::string& v, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(v, &pos);
            if (pos != v.size()) { throw std::invalid_argument(""); }
            return true;
        } catch (...) {
            issues.push_back(key + ": expected a number, got '" + v + "'");
            return false;
        }
    }
    bool parse_int(const std::string& key, const std::string& v, int& out) {
        try {
            std::size_t pos = 0;
            out = std::stoi(v, &pos);
            if (pos != v.size()) { throw std::invalid_argument(""); }
            return true;
        } catch (...) {
            issues.push_back(key + ": expected an integer, got '" + v + "'");
            return false;
        }
    }
    bool parse_ll(const std::string& key, const std::string& v, long long& out) {
        try {
            std::size_t pos = 0;
            out = std::stoll(v, &pos);
            if (pos != v.size()) { throw std::invalid_argument(""); }
            return true;
        } catch (...) {
            issues.push_back(key + ": expected an integer, got '" + v + "'");
            return false;
        }
    }
    bool parse_bool(const std::string& key, const std::string& v, bool& out) {
        if (v == "true" || v == "1" || v == "yes" || v == "on") {
            out = true;
            return true;
        }
        if (v == "false" || v == "0" || v == "no" || v == "off") {
            out = false;
            return true;
        }
        issues.push_back(key + ": expected a boolean, got '" + v + "'");
        return false;
    }
    template <typename T, typename F>
    bool parse_triple(const std::string& key, const std::string& v, std::array<T, 3>& out,
                      F&& scalar) {
        std::istringstream ss(v);
        std::string a, b, c, rest;
        if (!(ss >> a >> b >> c) || (ss >> rest)) {
            issues.push_back(key + ": expected 3 values, got '" + v + "'");
            return false;
        }
        return scalar(key, a, out[0]) && scalar(key, b, out[1]) && scalar(key, c, out[2]);
    }
};

} // namespace

RunConfig parse_config(std::istream& is, const std::string& origin) {
    RunConfig cfg;
    Parser p;
    std::string section;
    std::string line;
    int line_no = 0;

    const auto parse_d = [&](const std::string& k, const std::string& v, double& out) {
        return p.parse_double(k, v, out);
    };
    const auto parse_i = [&](const std::string& k, const std::string& v, int& out) {
        return p.parse_int(k, v, out);
    };

    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) { line = line.substr(0, hash); }
        line = trim(line);
        if (line.empty()) { continue; }
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.issues.push_back(origin + ":" + std::to_string(line_no) +
                                   ": malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.issues.push_back(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section.empty() ? key : section + "." + key;

        if (qual == "mesh.extent") {
            p.parse_triple(qual, value, cfg.extent, parse_d);
        } else if (qual == "mesh.n_elems") {
            std::array<int, 3> v{};
            if (p.parse_triple(qual, value, v, parse_i)) { cfg.n_elems = v; }
        } else if (qual == "mesh.grid") {
            std::array<int, 3> v{};
            if (p.parse_triple(qual, value, v, parse_i)) { cfg.grid_spec = v; }
        } else if (qual == "mesh.local_elems") {
            std::array<int, 3> v{};
            if (p.parse_triple(qual, value, v, parse_i)) { cfg.local_elems = v; }
        } else if (qual == "decomposition.grid") {
            std::array<int, 3> v{};
            if (p.parse_triple(qual, value, v, parse_i)) { cfg.decomp_grid = v; }
        } else if (qual == "decomposition.overlap") {
            p.parse_int(qual, value, cfg.overlap);
        } else if (qual == "decomposition.prec") {
            try {
                cfg.prec = prec_kind_from_string(value);
            } catch (const std::invalid_argument& e) {
                p.issues.push_back(qual + ": " + e.what());
            }
        } else if (qual == "time.dt") {
            p.parse_double(qual, value, cfg.dt);
        } else if (qual == "time.n_steps") {
            p.parse_int(qual, value, cfg.n_steps);
        } else if (qual == "material.E") {
            p.parse_double(qual, value, cfg.material.E);
        } else if (qual == "material.nu") {
            p.parse_double(qual, value, cfg.material.nu);
        } else if (qual == "material.alpha_T") {
            p.parse_double(qual, value, cfg.material.alpha_T);
        } else if (qual == "material.rho") {
            p.parse_double(qual, value, cfg.material.rho);
        } else if (qual == "material.c_rho") {
            p.parse_double(qual, value, cfg.material.c_rho);
        } else if (qual == "material.lambda_cond") {
            p.parse_double(qual, value, cfg.material.lambda_cond);
        } else if (qual == "material.theta0") {
            p.parse_double(qual, value, cfg.material.theta0);
        } else if (qual == "pool.shape") {
            if (value == "ellipsoid") {
                cfg.pool.shape = MeltPool::Shape::ellipsoid;
            } else if (value == "stl") {
                cfg.pool.shape = MeltPool::Shape::triangulated;
            } else {
                p.issues.push_back(qual + ": expected ellipsoid|stl, got '" + value + "'");
            }
        } else if (qual == "pool.stl_file") {
            cfg.pool_stl = value;
        } else if (qual == "pool.semi_axes") {
            std::array<double, 3> v{};
            if (p.parse_triple(qual, value, v, parse_d)) {
                cfg.pool.a_x = v[0];
                cfg.pool.a_y = v[1];
                cfg.pool.a_z = v[2];
            }
        } else if (qual == "pool.position0") {
            p.parse_double(qual, value, cfg.pool.position_0);
        } else if (qual == "pool.center_y") {
            if (p.parse_double(qual, value, cfg.pool.center_y)) { cfg.pool_center_y_set = true; }
        } else if (qual == "pool.speed") {
            p.parse_double(qual, value, cfg.pool.speed);
        } else if (qual == "pool.theta_l") {
            p.parse_double(qual, value, cfg.pool.theta_l);
        } else if (qual == "pool.n_ramp") {
            p.parse_int(qual, value, cfg.pool.n_ramp);
        } else if (qual == "solver.rtol") {
            p.parse_double(qual, value, cfg.gmres.rtol);
        } else if (qual == "solver.max_iters") {
            p.parse_int(qual, value, cfg.gmres.max_iters);
        } else if (qual == "solver.restart") {
            p.parse_int(qual, value, cfg.gmres.restart);
        } else if (qual == "solver.reorthogonalize") {
            p.parse_bool(qual, value, cfg.gmres.reorthogonalize);
        } else if (qual == "solver.newton_abs_tol") {
            p.parse_double(qual, value, cfg.newton_abs_tol);
        } else if (qual == "solver.max_newton") {
            p.parse_int(qual, value, cfg.max_newton);
        } else if (qual == "output.dir") {
            cfg.out_dir = value;
        } else if (qual == "output.vtk") {
            p.parse_bool(qual, value, cfg.write_vtk);
        } else if (qual == "run.threads") {
            p.parse_int(qual, value, cfg.threads);
        } else if (qual == "run.seed") {
            p.parse_ll(qual, value, cfg.seed);
        } else {
            p.issues.push_back(origin + ":" + std::to_string(line_no) + ": unknown key '" + qual +
                               "'");
        }
    }

    // Cross-field validation (all issues reported together).
    const bool grid_form = cfg.grid_spec.has_value() || cfg.local_elems.has_value();
    const bool elems_form = cfg.n_elems.has_value();
    if (grid_form && elems_form) {
        p.issues.push_back("mesh: give either n_elems or grid + local_elems, not both");
    } else if (grid_form && (!cfg.grid_spec || !cfg.local_elems)) {
        p.issues.push_back("mesh: grid and local_elems must be given together");
    } else if (!grid_form && !elems_form) {
        p.issues.push_back("mesh: one of n_elems or grid + local_elems is required");
    }
    if (elems_form && !cfg.decomp_grid) {
        p.issues.push_back("decomposition.grid is required with the n_elems mesh form");
    }
    if (grid_form && cfg.decomp_grid && cfg.grid_spec && *cfg.decomp_grid != *cfg.grid_spec) {
        p.issues.push_back("decomposition.grid conflicts with mesh.grid");
    }
    for (int d = 0; d < 3; ++d) {
        if (!(cfg.extent[static_cast<std::size_t>(d)] > 0.0)) {
            p.issues.push_back("mesh.extent: entries must be positive");
            break;
        }
    }
    const auto check_positive_triple = [&](const char* name,
                                           const std::optional<std::array<int, 3>>& v) {
        if (!v) { return; }
        for (int d = 0; d < 3; ++d) {
            if ((*v)[static_cast<std::size_t>(d)] <= 0) {
                p.issues.push_back(std::string(name) + ": entries must be positive");
                return;
            }
        }
    };
    check_positive_triple("mesh.n_elems", cfg.n_elems);
    check_positive_triple("mesh.grid", cfg.grid_spec);
    check_positive_triple("mesh.local_elems", cfg.local_elems);
    check_positive_triple("decomposition.grid", cfg.decomp_grid);
    if (cfg.n_elems && cfg.decomp_grid) {
        for (int d = 0; d < 3; ++d) {
            if ((*cfg.decomp_grid)[static_cast<std::size_t>(d)] > 0 &&
                (*cfg.n_elems)[static_cast<std::size_t>(d)] %
                        (*cfg.decomp_grid)[static_cast<std::size_t>(d)] !=
                    0) {
                p.issues.push_back("decomposition.grid must divide mesh.n_elems per axis");
                break;
            }
        }
    }
    if (cfg.overlap < 0) { p.issues.push_back("decomposition.overlap must be >= 0"); }
    if (!(cfg.dt > 0.0)) { p.issues.push_back("time.dt must be positive"); }
    if (cfg.n_steps < 1) { p.issues.push_back("time.n_steps must be >= 1"); }
    if (!(cfg.gmres.rtol > 0.0)) { p.issues.push_back("solver.rtol must be positive"); }
    if (cfg.gmres.max_iters < 1) { p.issues.push_back("solver.max_iters must be >= 1"); }
    if (cfg.gmres.restart < 0) { p.issues.push_back("solver.restart must be >= 0"); }
    if (!(cfg.newton_abs_tol > 0.0)) { p.issues.push_back("solver.newton_abs_tol must be positive"); }
    if (cfg.max_newton < 1) { p.issues.push_back("solver.max_newton must be >= 1"); }
    if (cfg.pool.n_ramp < 1) { p.issues.push_back("pool.n_ramp must be >= 1"); }
    if (!(cfg.pool.a_x > 0.0) || !(cfg.pool.a_y > 0.0) || !(cfg.pool.a_z > 0.0)) {
        p.issues.push_back("pool.semi_axes must be positive");
    }
    if (cfg.pool.shape == MeltPool::Shape::triangulated && cfg.pool_stl.empty()) {
        p.issues.push_back("pool.stl_file is required for pool.shape = stl");
    }
    if (cfg.threads < 0) { p.issues.push_back("run.threads must be >= 0"); }
    try {
        cfg.material.derive();
    } catch (const std::invalid_argument& e) {
        p.issues.push_back(std::string("material: ") + e.what());
    }

    if (!p.issues.empty()) { throw ConfigError(std::move(p.issues)); }

    // Derived defaults.
    if (!cfg.pool_center_y_set) { cfg.pool.center_y = cfg.extent[1] / 2.0; }
    cfg.pool.z_top = cfg.extent[2];
    return cfg;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) { throw ConfigError({"cannot open config file: " + path}); }
    return parse_config(is, path);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[mesh]\n";
    os << "extent = " << cfg.extent[0] << " " << cfg.extent[1] << " " << cfg.extent[2] << "\n";
    if (cfg.grid_spec) {
        os << "grid = " << (*cfg.grid_spec)[0] << " " << (*cfg.grid_spec)[1] << " "
           << (*cfg.grid_spec)[2] << "\n";
        os << "local_elems = " << (*cfg.local_elems)[0] << " " << (*cfg.local_elems)[1] << " "
           << (*cfg.local_elems)[2] << "\n";
    } else {
        os << "n_elems = " << (*cfg.n_elems)[0] << " " << (*cfg.n_elems)[1] << " "
           << (*cfg.n_elems)[2] << "\n";
    }
    os << "\n[decomposition]\n";
    if (cfg.decomp_grid && !cfg.grid_spec) {
        os << "grid = " << (*cfg.decomp_grid)[0] << " " << (*cfg.decomp_grid)[1] << " "
           << (*cfg.decomp_grid)[2] << "\n";
    }
    os << "overlap = " << cfg.overlap << "\n";
    os << "prec = " << to_string(cfg.prec) << "\n";
    os << "\n[time]\n";
    os << "dt = " << cfg.dt << "\n";
    os << "n_steps = " << cfg.n_steps << "\n";
    os << "\n[material]\n";
    os << "E = " << cfg.material.E << "\n";
    os << "nu = " << cfg.material.nu << "\n";
    os << "alpha_T = " << cfg.material.alpha_T << "\n";
    os << "rho = " << cfg.material.rho << "\n";
    os << "c_rho = " << cfg.material.c_rho << "\n";
    os << "lambda_cond = " << cfg.material.lambda_cond << "\n";
    os << "theta0 = " << cfg.material.theta0 << "\n";
    os << "\n[pool]\n";
    os << "shape = " << (cfg.pool.shape == MeltPool::Shape::ellipsoid ? "ellipsoid" : "stl")
       << "\n";
    if (!cfg.pool_stl.empty()) { os << "stl_file = " << cfg.pool_stl << "\n"; }
    os << "semi_axes = " << cfg.pool.a_x << " " << cfg.pool.a_y << " " << cfg.pool.a_z << "\n";
    os << "position0 = " << cfg.pool.position_0 << "\n";
    if (cfg.pool_center_y_set) { os << "center_y = " << cfg.pool.center_y << "\n"; }
    os << "speed = " << cfg.pool.speed << "\n";
    os << "theta_l = " << cfg.pool.theta_l << "\n";
    os << "n_ramp = " << cfg.pool.n_ramp << "\n";
    os << "\n[solver]\n";
    os << "rtol = " << cfg.gmres.rtol << "\n";
    os << "max_iters = " << cfg.gmres.max_iters << "\n";
    os << "restart = " << cfg.gmres.restart << "\n";
    os << "reorthogonalize = " << (cfg.gmres.reorthogonalize ? "true" : "false") << "\n";
    os << "newton_abs_tol = " << cfg.newton_abs_tol << "\n";
    os << "max_newton = " << cfg.max_newton << "\n";
    os << "\n[output]\n";
    if (!cfg.out_dir.empty()) { os << "dir = " << cfg.out_dir << "\n"; }
    os << "vtk = " << (cfg.write_vtk ? "true" : "false") << "\n";
    os << "\n[run]\n";
    os << "threads = " << cfg.threads << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

} // namespace weldsim
