#include "weldsim/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace weldsim {

namespace {

// Pack a sharing set (<= 8 subdomains for box partitions, but arbitrary
// sizes are handled) into a hashable key.
struct SharingKey {
    std::vector<int> s;
    bool operator==(const SharingKey& o) const { return s == o.s; }
};

struct SharingKeyHash {
    std::size_t operator()(const SharingKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : k.s) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace

std::array<int, 6> DomainDecomposition::owned_elem_box(const HexMesh& mesh, int s) const {
    const int gx = grid[0], gy = grid[1];
    const int sx = s % gx, sy = (s / gx) % gy, sz = s / (gx * gy);
    std::array<int, 6> box{};
    for (int d = 0; d < 3; ++d) {
        const int local = mesh.n_elems[d] / grid[d];
        const int idx = (d == 0) ? sx : (d == 1) ? sy : sz;
        box[d] = idx * local;
        box[d + 3] = (idx + 1) * local;
    }
    return box;
}

DomainDecomposition partition(const HexMesh& mesh, const std::array<int, 3>& grid) {
    for (int d = 0; d < 3; ++d) {
        if (grid[d] <= 0) {
            throw std::invalid_argument("partition: grid[" + std::to_string(d) +
                                        "] must be positive");
        }
        if (mesh.n_elems[d] % grid[d] != 0) {
            throw std::invalid_argument(
                "partition: grid[" + std::to_string(d) + "] = " + std::to_string(grid[d]) +
                " does not divide n_elems[" + std::to_string(d) + "] = " +
                std::to_string(mesh.n_elems[d]) + " (irregular partitions unsupported)");
        }
    }

    DomainDecomposition dd;
    dd.grid = grid;
    dd.n_subdomains = grid[0] * grid[1] * grid[2];
    dd.owner.resize(static_cast<std::size_t>(mesh.n_elements()));

    const std::array<int, 3> local = {mesh.n_elems[0] / grid[0], mesh.n_elems[1] / grid[1],
                                      mesh.n_elems[2] / grid[2]};
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const auto ijk = mesh.elem_ijk(e);
        const int sx = ijk[0] / local[0];
        const int sy = ijk[1] / local[1];
        const int sz = ijk[2] / local[2];
        dd.owner[static_cast<std::size_t>(e)] = sx + grid[0] * (sy + grid[1] * sz);
    }
    return dd;
}

void extend_overlap(const HexMesh& mesh, DomainDecomposition& dd, int k) {
    if (k < 0) { throw std::invalid_argument("extend_overlap: k must be >= 0"); }
    dd.overlap_k = k;
    dd.overlapping_nodes.assign(static_cast<std::size_t>(dd.n_subdomains), {});
    dd.overlapping_elem_box.assign(static_cast<std::size_t>(dd.n_subdomains), {});

    // On a structured mesh, element adjacency through shared nodes is the
    // 26-neighborhood of the element lattice, so distance <= k is the box
    // grown by k layers per side, clipped to the mesh.
    for (int s = 0; s < dd.n_subdomains; ++s) {
        auto box = dd.owned_elem_box(mesh, s);
        for (int d = 0; d < 3; ++d) {
            box[d] = std::max(0, box[d] - k);
            box[d + 3] = std::min(mesh.n_elems[d], box[d + 3] + k);
        }
        dd.overlapping_elem_box[static_cast<std::size_t>(s)] = box;

        auto& nodes = dd.overlapping_nodes[static_cast<std::size_t>(s)];
        nodes.reserve(static_cast<std::size_t>((box[3] - box[0] + 1) * (box[4] - box[1] + 1) *
                                               (box[5] - box[2] + 1)));
        for (int iz = box[2]; iz <= box[5]; ++iz) {
            for (int iy = box[1]; iy <= box[4]; ++iy) {
                for (int ix = box[0]; ix <= box[3]; ++ix) {
                    nodes.push_back(mesh.node_id(ix, iy, iz));
                }
            }
        }
        std::sort(nodes.begin(), nodes.end());
    }
}

void classify_interface(const HexMesh& mesh, DomainDecomposition& dd,
                        const std::vector<int>& dirichlet_nodes) {
    if (dd.owner.empty()) { throw std::invalid_argument("classify_interface: owners not assigned"); }

    // Sharing set per node: the owners of all elements whose closure
    // contains the node. Structured layout lets us enumerate the up to 8
    // incident elements directly.
    dd.node_sharing.assign(static_cast<std::size_t>(mesh.n_nodes), {});
    const auto nn = mesh.nodes_per_axis();
    for (int iz = 0; iz < nn[2]; ++iz) {
        for (int iy = 0; iy < nn[1]; ++iy) {
            for (int ix = 0; ix < nn[0]; ++ix) {
                const int node = mesh.node_id(ix, iy, iz);
                auto& sharing = dd.node_sharing[static_cast<std::size_t>(node)];
                for (int dz = -1; dz <= 0; ++dz) {
                    for (int dy = -1; dy <= 0; ++dy) {
                        for (int dx = -1; dx <= 0; ++dx) {
                            const int ex = ix + dx, ey = iy + dy, ez = iz + dz;
                            if (ex < 0 || ey < 0 || ez < 0 || ex >= mesh.n_elems[0] ||
                                ey >= mesh.n_elems[1] || ez >= mesh.n_elems[2]) {
                                continue;
                            }
                            const int s = dd.owner[static_cast<std::size_t>(mesh.elem_id(ex, ey, ez))];
                            if (std::find(sharing.begin(), sharing.end(), s) == sharing.end()) {
                                sharing.push_back(s);
                            }
                        }
                    }
                }
                std::sort(sharing.begin(), sharing.end());
            }
        }
    }

    std::vector<char> excluded(static_cast<std::size_t>(mesh.n_nodes), 0);
    for (int n : dirichlet_nodes) { excluded[static_cast<std::size_t>(n)] = 1; }

    dd.interface_nodes.clear();
    for (int n = 0; n < mesh.n_nodes; ++n) {
        if (dd.node_sharing[static_cast<std::size_t>(n)].size() >= 2 &&
            !excluded[static_cast<std::size_t>(n)]) {
            dd.interface_nodes.push_back(n);
        }
    }

    // Group by identical sharing set.
    std::unordered_map<SharingKey, std::vector<int>, SharingKeyHash> groups;
    groups.reserve(dd.interface_nodes.size() / 8 + 16);
    for (int n : dd.interface_nodes) {
        groups[SharingKey{dd.node_sharing[static_cast<std::size_t>(n)]}].push_back(n);
    }

    // Split each group into connected parts under mesh-edge adjacency (two
    // nodes are adjacent when they share an element, i.e. are lattice
    // 26-neighbors). For box partitions every group is already connected,
    // but the split keeps the classification honest for any Dirichlet
    // exclusion pattern.
    dd.components.clear();
    std::vector<char> in_group(static_cast<std::size_t>(mesh.n_nodes), 0);
    std::vector<char> visited(static_cast<std::size_t>(mesh.n_nodes), 0);
    std::vector<int> stack;
    for (auto& [key, members] : groups) {
        for (int n : members) { in_group[static_cast<std::size_t>(n)] = 1; }
        for (int seed : members) {
            if (visited[static_cast<std::size_t>(seed)]) { continue; }
            InterfaceComponent comp;
            comp.sharing_set = key.s;
            stack.assign(1, seed);
            visited[static_cast<std::size_t>(seed)] = 1;
            while (!stack.empty()) {
                const int n = stack.back();
                stack.pop_back();
                comp.nodes.push_back(n);
                const auto ijk = mesh.node_ijk(n);
                for (int dz = -1; dz <= 1; ++dz) {
                    for (int dy = -1; dy <= 1; ++dy) {
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (dx == 0 && dy == 0 && dz == 0) { continue; }
                            const int jx = ijk[0] + dx, jy = ijk[1] + dy, jz = ijk[2] + dz;
                            if (jx < 0 || jy < 0 || jz < 0 || jx >= nn[0] || jy >= nn[1] ||
                                jz >= nn[2]) {
                                continue;
                            }
                            const int m = mesh.node_id(jx, jy, jz);
                            if (in_group[static_cast<std::size_t>(m)] &&
                                !visited[static_cast<std::size_t>(m)]) {
                                visited[static_cast<std::size_t>(m)] = 1;
                                stack.push_back(m);
                            }
                        }
                    }
                }
            }
            std::sort(comp.nodes.begin(), comp.nodes.end());

            // Faces are exactly the components shared by two subdomains;
            // vertices and edges are told apart by the dimension of the
            // node set in the lattice.
            if (comp.sharing_set.size() == 2) {
                comp.kind = ComponentKind::face;
            } else {
                int dim = 0;
                for (int d = 0; d < 3; ++d) {
                    int lo = nn[d], hi = -1;
                    for (int n : comp.nodes) {
                        const int c = mesh.node_ijk(n)[d];
                        lo = std::min(lo, c);
                        hi = std::max(hi, c);
                    }
                    if (hi > lo) { ++dim; }
                }
                comp.kind = dim == 0 ? ComponentKind::vertex
                                     : (dim == 1 ? ComponentKind::edge : ComponentKind::face);
            }
            dd.components.push_back(std::move(comp));
        }
        for (int n : members) { in_group[static_cast<std::size_t>(n)] = 0; }
    }

    std::sort(dd.components.begin(), dd.components.end(),
              [](const InterfaceComponent& a, const InterfaceComponent& b) {
                  return a.nodes.front() < b.nodes.front();
              });
}

std::vector<std::vector<int>> build_restrictions(const DomainDecomposition& dd) {
    if (dd.overlapping_nodes.empty()) {
        throw std::invalid_argument("build_restrictions: overlapping node sets not built");
    }
    std::vector<std::vector<int>> restrictions(static_cast<std::size_t>(dd.n_subdomains));
    for (int s = 0; s < dd.n_subdomains; ++s) {
        const auto& nodes = dd.overlapping_nodes[static_cast<std::size_t>(s)];
        auto& idx = restrictions[static_cast<std::size_t>(s)];
        idx.reserve(4 * nodes.size());
        for (int n : nodes) {
            for (int c = 0; c < 4; ++c) { idx.push_back(HexMesh::dof(n, c)); }
        }
    }
    return restrictions;
}

DofMap build_dof_map(const HexMesh& mesh, const DomainDecomposition& dd,
                     const std::vector<std::pair<int, double>>& dirichlet_dofs) {
    DofMap map;
    map.n_dofs = mesh.n_dofs;
    map.is_constrained.assign(static_cast<std::size_t>(mesh.n_dofs), 0);
    map.is_interface_dof.assign(static_cast<std::size_t>(mesh.n_dofs), 0);

    std::vector<double> value(static_cast<std::size_t>(mesh.n_dofs), 0.0);
    for (const auto& [d, v] : dirichlet_dofs) {
        map.is_constrained[static_cast<std::size_t>(d)] = 1;
        value[static_cast<std::size_t>(d)] = v;
    }
    for (int d = 0; d < mesh.n_dofs; ++d) {
        if (map.is_constrained[static_cast<std::size_t>(d)]) {
            map.constrained.push_back(d);
            map.constrained_values.push_back(value[static_cast<std::size_t>(d)]);
        }
    }

    std::vector<char> on_interface(static_cast<std::size_t>(mesh.n_nodes), 0);
    for (int n : dd.interface_nodes) { on_interface[static_cast<std::size_t>(n)] = 1; }

    for (int n = 0; n < mesh.n_nodes; ++n) {
        for (int c = 0; c < 4; ++c) {
            const int d = HexMesh::dof(n, c);
            if (map.is_constrained[static_cast<std::size_t>(d)]) { continue; }
            if (on_interface[static_cast<std::size_t>(n)]) {
                map.interface.push_back(d);
                map.is_interface_dof[static_cast<std::size_t>(d)] = 1;
            } else {
                map.interior.push_back(d);
            }
        }
    }
    return map;
}

void dump_decomposition(const DomainDecomposition& dd, const HexMesh& mesh, std::ostream& os) {
    os << "decomposition grid " << dd.grid[0] << " " << dd.grid[1] << " " << dd.grid[2]
       << " subdomains " << dd.n_subdomains << " overlap " << dd.overlap_k << "\n";
    os << "nodes " << mesh.n_nodes << "\n";
    os << "owners";
    for (int o : dd.owner) { os << " " << o; }
    os << "\n";
    os << "components " << dd.components.size() << "\n";
    for (std::size_t j = 0; j < dd.components.size(); ++j) {
        const auto& c = dd.components[j];
        os << j << " "
           << (c.kind == ComponentKind::vertex ? "vertex"
                                               : c.kind == ComponentKind::edge ? "edge" : "face")
           << " nodes " << c.nodes.size() << " sharing";
        for (int s : c.sharing_set) { os << " " << s; }
        os << "\n";
    }
}

} // namespace weldsim
