#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace weldsim {

/// One triangle of an imported melt-pool surface.
struct Triangle {
    std::array<std::array<double, 3>, 3> v{};
};

/// Moving melt-pool volume. Two shapes are supported:
///  - parametric half-ellipsoid attached to the top surface z = z_top with
///    semi-axes (a_x, a_y) in the plane and depth a_z below the surface;
///  - a triangulated surface (ASCII STL) open against the top plane, closed
///    by an implicit planar cap.
/// The pool centroid travels along +x at constant speed.
struct MeltPool {
    enum class Shape { ellipsoid, triangulated };

    Shape shape = Shape::ellipsoid;
    double a_x = 3.0;   ///< mm
    double a_y = 1.5;   ///< mm
    double a_z = 1.0;   ///< depth below the top surface, mm
    std::vector<Triangle> triangles;  ///< in pool-local coordinates, centroid at x = 0

    double position_0 = 10.0;  ///< initial centroid x (mm)
    double center_y = 10.0;    ///< centroid y (mm)
    double z_top = 1.0;        ///< top surface height (mm)
    double speed = 10.0;       ///< travel speed along +x (mm/s)
    double theta_l = 1480.0;   ///< pool temperature (C)
    int n_ramp = 1;            ///< steps over which a node ramps to theta_l
};

/// Centroid x at time t (rigid translation along +x).
double pool_center_x(const MeltPool& pool, double t);

/// Is the point inside the pool translated to time t? Boundary points
/// count as inside. The parametric test is
///   ((x-cx)/a_x)^2 + ((y-cy)/a_y)^2 + ((z_top-z)/a_z)^2 <= 1,  z <= z_top;
/// the triangulated test casts a horizontal ray (parity), which never
/// meets the implicit top-plane cap.
bool inside_pool(const MeltPool& pool, const std::array<double, 3>& p, double t);

/// Load an ASCII STL surface ("solid/facet normal/vertex" grammar, normals
/// optional) into pool-local coordinates: the surface is translated so its
/// top-plane rim sits at z = 0 with centroid x = y = 0; z_top is added at
/// query time. Checks watertightness against the implicit top cap (every
/// edge shared by exactly two facets, except rim edges lying in the top
/// plane) and rejects degenerate triangles. Throws InvalidShapeError /
/// IoError.
std::vector<Triangle> load_stl_pool(const std::string& path);
std::vector<Triangle> parse_stl_pool(std::istream& is, const std::string& origin);

} // namespace weldsim
