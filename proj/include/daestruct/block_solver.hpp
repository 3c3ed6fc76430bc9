#pragma once

// Block-wise smallest offsets over a block upper-triangular signature matrix.
// Diagonal blocks are solved top to bottom; each block's lower bound on d
// comes from the couplings above it, shifted by the offsets already found.

#include <optional>
#include <span>
#include <vector>

#include "daestruct/btf.hpp"
#include "daestruct/fixed_point.hpp"

namespace daestruct {

/// Extended order: nullopt stands for -inf.
using ExtOrder = std::optional<Order>;

/// B'_{ij} = B_{ij} + q_i on finite cells. Throws DimensionMismatch.
SigmaSlice row_add(const SigmaSlice& block, std::span<const Order> q);

/// w_j = max_i B_{ij}; -inf for a column without finite cells.
std::vector<ExtOrder> col_max(const SigmaSlice& block);

/// q_i = max(a_i, b_i); -inf loses to any integer. Throws DimensionMismatch.
std::vector<Order> e_max(std::span<const ExtOrder> a, std::span<const Order> b);

struct BlockSolveResult {
  /// In original (unpermuted) row/column order.
  Offsets offsets;
  /// Union of the diagonal blocks' HVTs, original indices.
  Transversal hvt;
  std::vector<SolveStats> block_stats;
  /// Lower bound used for each block, in the block's local column order.
  std::vector<std::vector<Order>> params;
};

/// Throws InvalidBlockStructure when bs does not have block upper-triangular
/// shape for sigma, StructurallySingular when a diagonal block has no
/// transversal. Irreducible blocks are not required.
BlockSolveResult block_smallest_offsets(const SignatureMatrix& sigma, const BlockStructure& bs,
                                        Exec exec = Exec::serial);

/// Sum of the per-block counters.
SolveStats total_stats(std::span<const SolveStats> per_block);

}  // namespace daestruct
