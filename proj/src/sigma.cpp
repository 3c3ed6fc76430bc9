#include "daestruct/sigma.hpp"

#include <algorithm>
#include <string>

namespace daestruct {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::StructurallySingular: return "StructurallySingular";
    case ErrorKind::EmptyColumn: return "EmptyColumn";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NegativeParameter: return "NegativeParameter";
    case ErrorKind::InvalidBlockStructure: return "InvalidBlockStructure";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Order checked_add(Order a, Order b, const char* where) {
  Order r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError(where);
  return r;
}

Order checked_sub(Order a, Order b, const char* where) {
  Order r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError(where);
  return r;
}

SignatureMatrix::SignatureMatrix(Index n, std::vector<Cell> cells) : n_(n) {
  if (n < 1) throw InvalidArgument("signature matrix size must be positive");
  for (const Cell& e : cells) {
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n) {
      throw IndexOutOfRange("cell (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                            ") outside a " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix");
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < cells.size(); ++k) {
    if (cells[k].row == cells[k - 1].row && cells[k].col == cells[k - 1].col) {
      throw DuplicateEntry(cells[k].row, cells[k].col);
    }
  }
  by_row_ = std::move(cells);
  by_col_ = by_row_;
  std::stable_sort(by_col_.begin(), by_col_.end(),
                   [](const Cell& a, const Cell& b) { return a.col < b.col; });

  row_ptr_.assign(n + 1, 0);
  col_ptr_.assign(n + 1, 0);
  for (const Cell& e : by_row_) {
    ++row_ptr_[e.row + 1];
    ++col_ptr_[e.col + 1];
  }
  for (Index k = 0; k < n; ++k) {
    row_ptr_[k + 1] += row_ptr_[k];
    col_ptr_[k + 1] += col_ptr_[k];
  }
}

std::span<const Cell> SignatureMatrix::row(Index i) const {
  if (i < 0 || i >= n_) throw IndexOutOfRange("row " + std::to_string(i));
  return std::span<const Cell>(by_row_).subspan(row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
}

std::span<const Cell> SignatureMatrix::column(Index j) const {
  if (j < 0 || j >= n_) throw IndexOutOfRange("column " + std::to_string(j));
  return std::span<const Cell>(by_col_).subspan(col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]);
}

std::optional<Order> SignatureMatrix::at(Index i, Index j) const {
  auto r = row(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Cell& e, Index col) { return e.col < col; });
  if (it != r.end() && it->col == j) return it->sigma;
  return std::nullopt;
}

std::optional<Order> SignatureMatrix::max_order() const {
  if (by_row_.empty()) return std::nullopt;
  return std::max_element(by_row_.begin(), by_row_.end(),
                          [](const Cell& a, const Cell& b) { return a.sigma < b.sigma; })
      ->sigma;
}

std::optional<Order> SignatureMatrix::min_order() const {
  if (by_row_.empty()) return std::nullopt;
  return std::min_element(by_row_.begin(), by_row_.end(),
                          [](const Cell& a, const Cell& b) { return a.sigma < b.sigma; })
      ->sigma;
}

bool is_transversal_of(const SignatureMatrix& sigma, const Transversal& t) {
  const Index n = sigma.size();
  if (t.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Index i = 0; i < n; ++i) {
    const Index j = t.match[i];
    if (j < 0 || j >= n || seen[j]) return false;
    seen[j] = 1;
    if (!sigma.contains(i, j)) return false;
  }
  return true;
}

void require_transversal(const SignatureMatrix& sigma, const Transversal& t) {
  if (!is_transversal_of(sigma, t)) {
    throw InvalidArgument("matching is not a transversal of the signature matrix");
  }
}

ParamVector::ParamVector(std::vector<Order> p) : p_(std::move(p)) {
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (p_[j] < 0) throw NegativeParameter(j);
  }
}

std::vector<Order> map_d(const SignatureMatrix& sigma, std::span<const Order> c) {
  const Index n = sigma.size();
  if (static_cast<Index>(c.size()) != n) {
    throw DimensionMismatch("c has " + std::to_string(c.size()) + " components, expected " +
                            std::to_string(n));
  }
  std::vector<Order> d(n);
  for (Index j = 0; j < n; ++j) {
    auto col = sigma.column(j);
    if (col.empty()) throw EmptyColumn(j);
    Order best = checked_add(col.front().sigma, c[col.front().row], "map_d");
    for (const Cell& e : col.subspan(1)) best = std::max(best, checked_add(e.sigma, c[e.row], "map_d"));
    d[j] = best;
  }
  return d;
}

std::vector<Order> map_c(const SignatureMatrix& sigma, const Transversal& t,
                         std::span<const Order> d) {
  const Index n = sigma.size();
  if (static_cast<Index>(d.size()) != n || t.size() != n) {
    throw DimensionMismatch("map_c expects vectors of length " + std::to_string(n));
  }
  std::vector<Order> c(n);
  for (Index i = 0; i < n; ++i) {
    const Index j = t.match[i];
    auto s = sigma.at(i, j);
    if (!s) throw InvalidArgument("transversal cell is not finite");
    c[i] = checked_sub(d[j], *s, "map_c");
  }
  return c;
}

std::vector<Order> phi(const SignatureMatrix& sigma, const Transversal& t,
                       std::span<const Order> c) {
  const auto d = map_d(sigma, c);
  return map_c(sigma, t, d);
}

bool is_dual_feasible(const SignatureMatrix& sigma, const Offsets& off) {
  const auto n = static_cast<std::size_t>(sigma.size());
  if (off.c.size() != n || off.d.size() != n) return false;
  if (std::any_of(off.c.begin(), off.c.end(), [](Order v) { return v < 0; })) return false;
  for (const Cell& e : sigma.entries()) {
    Order diff;
    if (__builtin_sub_overflow(off.d[e.col], off.c[e.row], &diff)) return false;
    if (diff < e.sigma) return false;
  }
  return true;
}

bool is_tight_on(const SignatureMatrix& sigma, const Transversal& t, const Offsets& off) {
  const auto n = static_cast<std::size_t>(sigma.size());
  if (off.c.size() != n || off.d.size() != n || !is_transversal_of(sigma, t)) return false;
  for (Index i = 0; i < sigma.size(); ++i) {
    const Index j = t.match[i];
    Order diff;
    if (__builtin_sub_overflow(off.d[j], off.c[i], &diff)) return false;
    if (diff != *sigma.at(i, j)) return false;
  }
  return true;
}

Order l1_norm(std::span<const Order> v) {
  Order s = 0;
  for (Order x : v) s = checked_add(s, x < 0 ? -x : x, "l1_norm");
  return s;
}

}  // namespace daestruct
