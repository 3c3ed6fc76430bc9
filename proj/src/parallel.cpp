#include "daestruct/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace daestruct {

namespace {

// Exceptions must not cross an OpenMP region boundary; the first failing
// index is recorded and rethrown afterwards.
constexpr Index kNoFailure = -1;

void record_failure(std::atomic<Index>& slot, Index where) {
  Index expected = kNoFailure;
  while (!slot.compare_exchange_weak(expected, where)) {
    if (expected != kNoFailure && expected <= where) return;
  }
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Order> map_d_parallel(const SignatureMatrix& sigma, std::span<const Order> c) {
  const Index n = sigma.size();
  if (static_cast<Index>(c.size()) != n) {
    throw DimensionMismatch("c has " + std::to_string(c.size()) + " components, expected " +
                            std::to_string(n));
  }
  std::vector<Order> d(n);
  std::atomic<Index> empty_col{kNoFailure};
  std::atomic<Index> overflow_col{kNoFailure};

#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) {
    auto col = sigma.column(j);
    if (col.empty()) {
      record_failure(empty_col, j);
      continue;
    }
    Order best = 0;
    bool first = true;
    for (const Cell& e : col) {
      Order v;
      if (__builtin_add_overflow(e.sigma, c[e.row], &v)) {
        record_failure(overflow_col, j);
        break;
      }
      best = first ? v : std::max(best, v);
      first = false;
    }
    d[j] = best;
  }

  // Report in the order the serial kernel would have: lowest column first.
  const Index ec = empty_col.load();
  const Index oc = overflow_col.load();
  if (ec != kNoFailure && (oc == kNoFailure || ec < oc)) throw EmptyColumn(ec);
  if (oc != kNoFailure) throw OverflowError("map_d");
  return d;
}

std::vector<Order> map_c_parallel(const SignatureMatrix& sigma, const Transversal& t,
                                  std::span<const Order> d) {
  const Index n = sigma.size();
  if (static_cast<Index>(d.size()) != n || t.size() != n) {
    throw DimensionMismatch("map_c expects vectors of length " + std::to_string(n));
  }
  std::vector<Order> c(n);
  std::atomic<Index> bad_row{kNoFailure};
  std::atomic<Index> overflow_row{kNoFailure};

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const Index j = t.match[i];
    auto s = (j >= 0 && j < n) ? sigma.at(i, j) : std::nullopt;
    if (!s) {
      record_failure(bad_row, i);
      continue;
    }
    if (__builtin_sub_overflow(d[j], *s, &c[i])) record_failure(overflow_row, i);
  }

  const Index br = bad_row.load();
  const Index orow = overflow_row.load();
  if (br != kNoFailure && (orow == kNoFailure || br < orow)) {
    throw InvalidArgument("transversal cell is not finite");
  }
  if (orow != kNoFailure) throw OverflowError("map_c");
  return c;
}

std::vector<Order> phi_parallel(const SignatureMatrix& sigma, const Transversal& t,
                                std::span<const Order> c) {
  const auto d = map_d_parallel(sigma, c);
  return map_c_parallel(sigma, t, d);
}

std::vector<Order> phi(const SignatureMatrix& sigma, const Transversal& t,
                       std::span<const Order> c, Exec exec) {
  return exec == Exec::parallel ? phi_parallel(sigma, t, c) : phi(sigma, t, c);
}

std::vector<Order> map_d(const SignatureMatrix& sigma, std::span<const Order> c, Exec exec) {
  return exec == Exec::parallel ? map_d_parallel(sigma, c) : map_d(sigma, c);
}

}  // namespace daestruct
