#include "weldsim/ordering.hpp"

#include <algorithm>
#include <numeric>

namespace weldsim {

namespace {

constexpr std::size_t kLeafSize = 24;

// Recursively order the vertices listed in [begin, end) (indices into
// coords), appending to out. Separator = the node layer at the median of
// the widest axis; with 26-connectivity no vertex on one side is adjacent
// to the other side.
void dissect(const std::vector<std::array<int, 3>>& coords, std::vector<int>& work,
             std::size_t begin, std::size_t end, std::vector<int>& out) {
    const std::size_t n = end - begin;
    if (n <= kLeafSize) {
        std::sort(work.begin() + static_cast<std::ptrdiff_t>(begin),
                  work.begin() + static_cast<std::ptrdiff_t>(end));
        for (std::size_t i = begin; i < end; ++i) { out.push_back(work[i]); }
        return;
    }

    std::array<int, 3> lo = {coords[static_cast<std::size_t>(work[begin])][0],
                             coords[static_cast<std::size_t>(work[begin])][1],
                             coords[static_cast<std::size_t>(work[begin])][2]};
    std::array<int, 3> hi = lo;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& c = coords[static_cast<std::size_t>(work[i])];
        for (int d = 0; d < 3; ++d) {
            lo[d] = std::min(lo[d], c[d]);
            hi[d] = std::max(hi[d], c[d]);
        }
    }
    int axis = 0;
    for (int d = 1; d < 3; ++d) {
        if (hi[d] - lo[d] > hi[axis] - lo[axis]) { axis = d; }
    }
    if (hi[axis] == lo[axis]) {
        // Degenerate box (all vertices in one layer of every axis): emit.
        std::sort(work.begin() + static_cast<std::ptrdiff_t>(begin),
                  work.begin() + static_cast<std::ptrdiff_t>(end));
        for (std::size_t i = begin; i < end; ++i) { out.push_back(work[i]); }
        return;
    }
    const int cut = lo[axis] + (hi[axis] - lo[axis]) / 2;

    // Partition into left (< cut), right (> cut), separator (== cut).
    auto mid_left = std::partition(
        work.begin() + static_cast<std::ptrdiff_t>(begin),
        work.begin() + static_cast<std::ptrdiff_t>(end),
        [&](int v) { return coords[static_cast<std::size_t>(v)][axis] < cut; });
    auto mid_right = std::partition(
        mid_left, work.begin() + static_cast<std::ptrdiff_t>(end),
        [&](int v) { return coords[static_cast<std::size_t>(v)][axis] > cut; });

    const std::size_t left_end = static_cast<std::size_t>(mid_left - work.begin());
    const std::size_t right_end = static_cast<std::size_t>(mid_right - work.begin());

    dissect(coords, work, begin, left_end, out);
    dissect(coords, work, left_end, right_end, out);
    // Separator last.
    std::sort(work.begin() + static_cast<std::ptrdiff_t>(right_end),
              work.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t i = right_end; i < end; ++i) { out.push_back(work[i]); }
}

} // namespace

std::vector<int> lattice_nd_order(const std::vector<std::array<int, 3>>& lattice_coords) {
    std::vector<int> work(lattice_coords.size());
    std::iota(work.begin(), work.end(), 0);
    std::vector<int> out;
    out.reserve(lattice_coords.size());
    dissect(lattice_coords, work, 0, lattice_coords.size(), out);
    return out;
}

std::vector<int> expand_block_perm(const std::vector<int>& node_perm, int block_size) {
    std::vector<int> perm;
    perm.reserve(node_perm.size() * static_cast<std::size_t>(block_size));
    for (int node : node_perm) {
        for (int c = 0; c < block_size; ++c) { perm.push_back(node * block_size + c); }
    }
    return perm;
}

} // namespace weldsim
