#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

#include "weldsim/gmres.hpp"
#include "weldsim/material.hpp"
#include "weldsim/melt_pool.hpp"
#include "weldsim/schwarz.hpp"

namespace weldsim {

/// One simulation run, parsed from the line-oriented `key = value` config
/// format with [section] headers. Exactly one mesh specification must be
/// present: either extent + n_elems (plus [decomposition] grid) or
/// grid + local_elems (n_elems = grid * local_elems per axis).
struct RunConfig {
    // [mesh]
    std::array<double, 3> extent = {60.0, 20.0, 1.0};
    std::optional<std::array<int, 3>> n_elems;
    std::optional<std::array<int, 3>> grid_spec;       ///< grid + local form
    std::optional<std::array<int, 3>> local_elems;

    // [decomposition]
    std::optional<std::array<int, 3>> decomp_grid;     ///< required with n_elems form
    int overlap = 1;
    PrecKind prec = PrecKind::gdsw;

    // [time]
    double dt = 0.05;
    int n_steps = 3;

    // [material] (defaults: austenitic chrome nickel steel)
    MaterialParams material = default_material();

    // [pool]
    MeltPool pool;      ///< ellipsoid defaults; STL file loaded at run time
    std::string pool_stl;  ///< path; empty = parametric shape
    bool pool_center_y_set = false;

    // [solver]
    GmresConfig gmres;
    double newton_abs_tol = 1e-8;
    int max_newton = 10;

    // [output]
    std::string out_dir;
    bool write_vtk = false;

    // [run]
    int threads = 0;   ///< 0 = hardware concurrency
    long long seed = 0;  ///< reserved, unused by default

    /// Resolved element counts (from either specification).
    std::array<int, 3> resolved_n_elems() const;
    /// Resolved decomposition grid.
    std::array<int, 3> resolved_grid() const;
};

/// Parse a config document. Collects every problem and throws a single
/// ConfigError listing all of them. Unknown keys are rejected.
RunConfig parse_config(std::istream& is, const std::string& origin = "<config>");
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical serialization; serialize(parse(text)) is idempotent.
std::string serialize_config(const RunConfig& cfg);

} // namespace weldsim
