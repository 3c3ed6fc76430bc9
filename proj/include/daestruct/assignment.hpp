#pragma once

#include <cstdint>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct MatchingStats {
  /// Elementary steps of the augmenting-path search: one per edge relaxation
  /// and one per column examined when choosing the next column to settle.
  std::uint64_t ops = 0;
  std::uint64_t augmentations = 0;
};

/// Highest-value transversal by shortest augmenting paths with potentials
/// (Kuhn-Munkres, O(n^3)). Absent cells are non-edges, so a missing perfect
/// matching is reported as StructurallySingular rather than as a huge
/// negative value. Rows are augmented in increasing order and ties between
/// candidate columns go to the lowest column index.
Transversal find_hvt(const SignatureMatrix& sigma, MatchingStats* stats = nullptr);

/// Sum of sigma over the cells of t.
Order transversal_value(const SignatureMatrix& sigma, const Transversal& t);

/// Any perfect matching of the sparsity pattern (values ignored), or
/// StructurallySingular. Augmenting-path DFS.
Transversal find_any_transversal(const SignatureMatrix& sigma);

}  // namespace daestruct
