#include "weldsim/melt_pool.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "weldsim/errors.hpp"

namespace weldsim {

double pool_center_x(const MeltPool& pool, double t) {
    return pool.position_0 + pool.speed * t;
}

namespace {

// Watertight-enough ray/triangle crossing test for the parity count. The
// ray runs from p in a fixed direction chosen to avoid the top plane and,
// with its slight y/z skew, edge-on hits for axis-aligned test geometry.
constexpr std::array<double, 3> kRayDir = {1.0, 3.1e-4, -7.3e-4};

bool ray_hits(const Triangle& t, const std::array<double, 3>& origin) {
    // Moeller-Trumbore.
    const auto& v0 = t.v[0];
    std::array<double, 3> e1, e2;
    for (int d = 0; d < 3; ++d) {
        e1[static_cast<std::size_t>(d)] = t.v[1][static_cast<std::size_t>(d)] - v0[static_cast<std::size_t>(d)];
        e2[static_cast<std::size_t>(d)] = t.v[2][static_cast<std::size_t>(d)] - v0[static_cast<std::size_t>(d)];
    }
    const std::array<double, 3> h = {kRayDir[1] * e2[2] - kRayDir[2] * e2[1],
                                     kRayDir[2] * e2[0] - kRayDir[0] * e2[2],
                                     kRayDir[0] * e2[1] - kRayDir[1] * e2[0]};
    const double a = e1[0] * h[0] + e1[1] * h[1] + e1[2] * h[2];
    if (std::abs(a) < 1e-14) { return false; }  // parallel
    const double f = 1.0 / a;
    const std::array<double, 3> s = {origin[0] - v0[0], origin[1] - v0[1], origin[2] - v0[2]};
    const double u = f * (s[0] * h[0] + s[1] * h[1] + s[2] * h[2]);
    if (u < 0.0 || u > 1.0) { return false; }
    const std::array<double, 3> q = {s[1] * e1[2] - s[2] * e1[1], s[2] * e1[0] - s[0] * e1[2],
                                     s[0] * e1[1] - s[1] * e1[0]};
    const double v = f * (kRayDir[0] * q[0] + kRayDir[1] * q[1] + kRayDir[2] * q[2]);
    if (v < 0.0 || u + v > 1.0) { return false; }
    const double dist = f * (e2[0] * q[0] + e2[1] * q[1] + e2[2] * q[2]);
    return dist >= 0.0;
}

} // namespace

bool inside_pool(const MeltPool& pool, const std::array<double, 3>& p, double t) {
    const double cx = pool_center_x(pool, t);
    if (pool.shape == MeltPool::Shape::ellipsoid) {
        if (p[2] > pool.z_top + 1e-12) { return false; }
        const double rx = (p[0] - cx) / pool.a_x;
        const double ry = (p[1] - pool.center_y) / pool.a_y;
        const double rz = (pool.z_top - p[2]) / pool.a_z;
        return rx * rx + ry * ry + rz * rz <= 1.0 + 1e-12;
    }
    if (p[2] > pool.z_top + 1e-12) { return false; }
    // Translate the query into pool-local coordinates (rim at z = 0).
    const std::array<double, 3> local = {p[0] - cx, p[1] - pool.center_y, p[2] - pool.z_top};
    int crossings = 0;
    for (const auto& tri : pool.triangles) {
        if (ray_hits(tri, local)) { ++crossings; }
    }
    return crossings % 2 == 1;
}

namespace {

struct QuantizedPoint {
    long long x, y, z;
    bool operator<(const QuantizedPoint& o) const {
        if (x != o.x) { return x < o.x; }
        if (y != o.y) { return y < o.y; }
        return z < o.z;
    }
};

QuantizedPoint quantize(const std::array<double, 3>& p, double scale) {
    return {static_cast<long long>(std::llround(p[0] / scale)),
            static_cast<long long>(std::llround(p[1] / scale)),
            static_cast<long long>(std::llround(p[2] / scale))};
}

double triangle_area(const Triangle& t) {
    std::array<double, 3> e1, e2;
    for (int d = 0; d < 3; ++d) {
        e1[static_cast<std::size_t>(d)] = t.v[1][static_cast<std::size_t>(d)] - t.v[0][static_cast<std::size_t>(d)];
        e2[static_cast<std::size_t>(d)] = t.v[2][static_cast<std::size_t>(d)] - t.v[0][static_cast<std::size_t>(d)];
    }
    const double cx = e1[1] * e2[2] - e1[2] * e2[1];
    const double cy = e1[2] * e2[0] - e1[0] * e2[2];
    const double cz = e1[0] * e2[1] - e1[1] * e2[0];
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

} // namespace

std::vector<Triangle> parse_stl_pool(std::istream& is, const std::string& origin) {
    std::vector<Triangle> tris;
    std::string token;
    Triangle current;
    int vertex_count = 0;
    bool in_facet = false;
    while (is >> token) {
        if (token == "facet") {
            in_facet = true;
            vertex_count = 0;
        } else if (token == "vertex") {
            if (!in_facet || vertex_count >= 3) {
                throw IoError("parse_stl_pool: stray vertex in " + origin);
            }
            auto& v = current.v[static_cast<std::size_t>(vertex_count)];
            if (!(is >> v[0] >> v[1] >> v[2])) {
                throw IoError("parse_stl_pool: malformed vertex in " + origin);
            }
            ++vertex_count;
        } else if (token == "endfacet") {
            if (vertex_count != 3) {
                throw IoError("parse_stl_pool: facet without 3 vertices in " + origin);
            }
            tris.push_back(current);
            in_facet = false;
        }
        // "solid", "normal", "outer", "loop", "endloop", "endsolid" and the
        // normal components fall through; normals are optional and ignored.
    }
    if (tris.empty()) { throw IoError("parse_stl_pool: no facets found in " + origin); }

    // Bounding box and quantization scale.
    std::array<double, 3> lo = tris[0].v[0], hi = tris[0].v[0];
    for (const auto& t : tris) {
        for (const auto& v : t.v) {
            for (int d = 0; d < 3; ++d) {
                lo[static_cast<std::size_t>(d)] = std::min(lo[static_cast<std::size_t>(d)], v[static_cast<std::size_t>(d)]);
                hi[static_cast<std::size_t>(d)] = std::max(hi[static_cast<std::size_t>(d)], v[static_cast<std::size_t>(d)]);
            }
        }
    }
    double diag = 0.0;
    for (int d = 0; d < 3; ++d) {
        diag = std::max(diag, hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)]);
    }
    if (!(diag > 0.0)) { throw InvalidShapeError("parse_stl_pool: degenerate surface in " + origin); }
    const double qscale = diag * 1e-9;
    const double area_tol = diag * diag * 1e-12;

    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (triangle_area(tris[i]) <= area_tol) {
            throw InvalidShapeError("parse_stl_pool: degenerate (zero-area) triangle " +
                                    std::to_string(i) + " in " + origin);
        }
    }

    // Watertightness against the implicit top cap: every edge must be
    // shared by exactly two facets, except edges lying in the top plane
    // z = max (the rim the cap closes).
    const double z_top = hi[2];
    const double z_tol = std::max(1e-9, diag * 1e-9);
    std::map<std::pair<QuantizedPoint, QuantizedPoint>, int> edge_count;
    std::map<std::pair<QuantizedPoint, QuantizedPoint>, bool> edge_on_top;
    for (const auto& t : tris) {
        for (int e = 0; e < 3; ++e) {
            const auto& va = t.v[static_cast<std::size_t>(e)];
            const auto& vb = t.v[static_cast<std::size_t>((e + 1) % 3)];
            auto qa = quantize(va, qscale);
            auto qb = quantize(vb, qscale);
            auto key = qa < qb ? std::make_pair(qa, qb) : std::make_pair(qb, qa);
            ++edge_count[key];
            edge_on_top[key] =
                std::abs(va[2] - z_top) <= z_tol && std::abs(vb[2] - z_top) <= z_tol;
        }
    }
    for (const auto& [key, count] : edge_count) {
        const int effective = count + (edge_on_top[key] && count == 1 ? 1 : 0);
        if (effective != 2) {
            throw InvalidShapeError(
                "parse_stl_pool: surface is not watertight (edge shared by " +
                std::to_string(count) + " facets, not on the top plane) in " + origin);
        }
    }

    // Shift to pool-local coordinates: rim plane at z = 0, centroid x = y = 0.
    const double cx = 0.5 * (lo[0] + hi[0]);
    const double cy = 0.5 * (lo[1] + hi[1]);
    for (auto& t : tris) {
        for (auto& v : t.v) {
            v[0] -= cx;
            v[1] -= cy;
            v[2] -= z_top;
        }
    }
    return tris;
}

std::vector<Triangle> load_stl_pool(const std::string& path) {
    std::ifstream is(path);
    if (!is) { throw IoError("load_stl_pool: cannot open " + path); }
    return parse_stl_pool(is, path);
}

} // namespace weldsim
