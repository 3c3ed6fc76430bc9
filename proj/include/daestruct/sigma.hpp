#pragma once

// Signature matrices, transversals, offsets and the elementary offset maps.
//
// A signature matrix is stored sparsely: a cell that is not present is -inf.
// No sentinel integer ever stands in for -inf, so expressions like
// sigma + c can never overflow through a fake "minus infinity".

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "daestruct/error.hpp"

namespace daestruct {

using Index = std::int32_t;
using Order = std::int64_t;

struct Cell {
  Index row = 0;
  Index col = 0;
  Order sigma = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Overflow-checked integer helpers; they throw OverflowError.
Order checked_add(Order a, Order b, const char* where = "offset arithmetic");
Order checked_sub(Order a, Order b, const char* where = "offset arithmetic");

/// Square sparse matrix of derivative orders. Immutable once built.
class SignatureMatrix {
 public:
  /// Builds from an unordered cell list. Throws IndexOutOfRange,
  /// DuplicateEntry, or InvalidArgument when n < 1.
  SignatureMatrix(Index n, std::vector<Cell> cells);

  Index size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return by_row_.size(); }

  /// All finite cells in row-major order.
  std::span<const Cell> entries() const noexcept { return by_row_; }
  std::span<const Cell> row(Index i) const;
  /// Finite cells of column j, ordered by row.
  std::span<const Cell> column(Index j) const;

  std::optional<Order> at(Index i, Index j) const;
  bool contains(Index i, Index j) const { return at(i, j).has_value(); }

  /// Largest finite order, or nullopt for an all -inf matrix.
  std::optional<Order> max_order() const;
  std::optional<Order> min_order() const;

  friend bool operator==(const SignatureMatrix& a, const SignatureMatrix& b) {
    return a.n_ == b.n_ && a.by_row_ == b.by_row_;
  }

 private:
  Index n_;
  std::vector<Cell> by_row_;
  std::vector<Cell> by_col_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_ptr_;
};

/// A perfect matching inside the sparsity pattern: row i is matched to
/// column match[i].
struct Transversal {
  std::vector<Index> match;

  Index size() const noexcept { return static_cast<Index>(match.size()); }
  friend bool operator==(const Transversal&, const Transversal&) = default;
};

bool is_transversal_of(const SignatureMatrix& sigma, const Transversal& t);

/// Throws InvalidArgument when t is not a transversal of sigma.
void require_transversal(const SignatureMatrix& sigma, const Transversal& t);

/// c: equation differentiation counts; d: highest derivative order per variable.
struct Offsets {
  std::vector<Order> c;
  std::vector<Order> d;

  friend bool operator==(const Offsets&, const Offsets&) = default;
};

/// Lower bounds on d. Components must be nonnegative.
class ParamVector {
 public:
  /// Throws NegativeParameter on the first negative component.
  explicit ParamVector(std::vector<Order> p);
  static ParamVector zeros(Index n) { return ParamVector(std::vector<Order>(n, 0)); }

  std::span<const Order> values() const noexcept { return p_; }
  Index size() const noexcept { return static_cast<Index>(p_.size()); }
  Order operator[](std::size_t j) const { return p_[j]; }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<Order> p_;
};

/// d_j = max over finite cells of (sigma_ij + c_i). Throws EmptyColumn.
std::vector<Order> map_d(const SignatureMatrix& sigma, std::span<const Order> c);

/// c_i = d[match[i]] - sigma(i, match[i]). No clamping; results may be negative.
std::vector<Order> map_c(const SignatureMatrix& sigma, const Transversal& t,
                         std::span<const Order> d);

/// map_c(map_d(c)).
std::vector<Order> phi(const SignatureMatrix& sigma, const Transversal& t,
                       std::span<const Order> c);

bool is_dual_feasible(const SignatureMatrix& sigma, const Offsets& off);

bool is_tight_on(const SignatureMatrix& sigma, const Transversal& t, const Offsets& off);

/// Sum of the components; used for the iteration bounds.
Order l1_norm(std::span<const Order> v);

}  // namespace daestruct
