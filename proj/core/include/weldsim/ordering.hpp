#pragma once

#include <array>
#include <vector>

namespace weldsim {

/// Fill-reducing nested-dissection ordering for graphs living on a
/// lattice with 26-connectivity (structured meshes and their sub-boxes).
///
/// `lattice_coords` gives the (i, j, k) lattice position of every vertex.
/// A single node layer at the median of the longest box axis is an exact
/// separator; it is ordered last, the two halves recurse. Returns perm
/// with perm[new_position] = vertex.
std::vector<int> lattice_nd_order(const std::vector<std::array<int, 3>>& lattice_coords);

/// Expand a node-level permutation to the node-blocked DoF permutation
/// (block_size consecutive DoFs per node).
std::vector<int> expand_block_perm(const std::vector<int>& node_perm, int block_size);

} // namespace weldsim
