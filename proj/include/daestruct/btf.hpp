#pragma once

// Block upper-triangular forms of a signature matrix.
//
// Permuted position k holds original row row_perm[k] and original column
// col_perm[k]. Diagonal blocks are consecutive runs of block_sizes; every
// finite cell lies in a diagonal block or in a block strictly above it.

#include <string>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct BlockStructure {
  std::vector<Index> row_perm;
  std::vector<Index> col_perm;
  std::vector<Index> block_sizes;

  Index block_count() const noexcept { return static_cast<Index>(block_sizes.size()); }
  /// Permuted index where block b starts.
  Index block_start(Index b) const;

  static BlockStructure single_block(Index n);

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

/// A rectangular slice of a signature matrix with local 0-based indices.
struct SigmaSlice {
  Index rows = 0;
  Index cols = 0;
  std::vector<Cell> cells;  // row-major

  friend bool operator==(const SigmaSlice&, const SigmaSlice&) = default;
};

enum class BtfMode {
  fine,    // diagonal blocks must also be irreducible
  coarse,  // any square, structurally nonsingular diagonal blocks
};

/// Finest block triangular form via a matching and Tarjan's SCCs on the
/// matched column digraph. Blocks are emitted in topological order; among
/// blocks that are free to go next the one holding the smallest original
/// column goes first. Rows and columns are ascending inside each block.
/// Throws StructurallySingular.
BlockStructure fine_btf(const SignatureMatrix& sigma);

bool validate_btf(const SignatureMatrix& sigma, const BlockStructure& bs,
                  BtfMode mode = BtfMode::fine);

/// Shape-only check: permutations, block sizes and the upper-triangular
/// placement of finite cells. Empty when the shape is valid.
std::string btf_shape_violation(const SignatureMatrix& sigma, const BlockStructure& bs);

/// Explains why validate_btf fails; empty when the structure is valid.
std::string btf_violation(const SignatureMatrix& sigma, const BlockStructure& bs,
                          BtfMode mode = BtfMode::fine);

/// Diagonal block b in local coordinates. Throws IndexOutOfRange.
SignatureMatrix extract_block(const SignatureMatrix& sigma, const BlockStructure& bs, Index b);

/// Coupling M_{k,i} (k < i) in local coordinates. Throws IndexOutOfRange.
SigmaSlice extract_coupling(const SignatureMatrix& sigma, const BlockStructure& bs, Index k,
                            Index i);

/// The couplings M_{0,i} .. M_{i-1,i} stacked vertically; local row r is
/// permuted row r of the matrix.
SigmaSlice extract_coupling_stack(const SignatureMatrix& sigma, const BlockStructure& bs,
                                  Index i);

/// Applies the structure: cell (k, l) of the result is
/// sigma(row_perm[k], col_perm[l]).
SignatureMatrix permute(const SignatureMatrix& sigma, const BlockStructure& bs);

/// Number of strongly connected components of the column digraph induced by
/// transversal t (edge j -> j' when the row matched to j has a finite cell in j').
Index count_column_sccs(const SignatureMatrix& sigma, const Transversal& t);

/// BlockStructure JSON: {"row_perm":[...],"col_perm":[...],"block_sizes":[...]}.
std::string write_block_structure(const BlockStructure& bs);
/// Throws FormatError.
BlockStructure read_block_structure(const std::string& text);

}  // namespace daestruct
