#include "daestruct/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace daestruct::oracle {

std::uint64_t Rng::below(std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  const u128 wide = static_cast<u128>(next()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t Rng::in_range(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

std::vector<Index> Rng::permutation(Index n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (Index k = n - 1; k >= 1; --k) {
    std::swap(p[k], p[below(static_cast<std::uint64_t>(k) + 1)]);
  }
  return p;
}

namespace {

void check_common(const GenSpec& spec) {
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
    throw InvalidArgument("density must lie in [0, 1]");
  }
  if (spec.sigma_min > spec.sigma_max) throw InvalidArgument("empty sigma range");
}

// Dense scratch grid used while generating; -inf is "not set".
class Grid {
 public:
  explicit Grid(Index n) : n_(n), set_(static_cast<std::size_t>(n) * n, 0), val_(set_.size()) {}
  bool has(Index i, Index j) const { return set_[idx(i, j)]; }
  void put(Index i, Index j, Order v) {
    set_[idx(i, j)] = 1;
    val_[idx(i, j)] = v;
  }
  SignatureMatrix build() const {
    std::vector<Cell> cells;
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < n_; ++j) {
        if (has(i, j)) cells.push_back({i, j, val_[idx(i, j)]});
      }
    }
    return SignatureMatrix(n_, std::move(cells));
  }

 private:
  std::size_t idx(Index i, Index j) const { return static_cast<std::size_t>(i) * n_ + j; }
  Index n_;
  std::vector<char> set_;
  std::vector<Order> val_;
};

// D(c) computed directly from the definition.
std::vector<Order> column_max_plus(const SignatureMatrix& sigma, const std::vector<Order>& c) {
  std::vector<Order> d(sigma.size(), std::numeric_limits<Order>::min());
  for (const Cell& e : sigma.entries()) d[e.col] = std::max(d[e.col], e.sigma + c[e.row]);
  return d;
}

Order objective(const std::vector<Order>& c, const std::vector<Order>& d) {
  Order z = 0;
  for (Order v : d) z += v;
  for (Order v : c) z -= v;
  return z;
}

}  // namespace

SignatureMatrix gen_sigma(const GenSpec& spec) {
  check_common(spec);
  if (spec.n < 1) throw InvalidArgument("n must be positive");
  Rng rng(spec.seed);
  const Index n = spec.n;
  Grid grid(n);
  const auto planted = rng.permutation(n);
  for (Index i = 0; i < n; ++i) grid.put(i, planted[i], rng.in_range(spec.sigma_min, spec.sigma_max));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (grid.has(i, j)) continue;
      if (rng.chance(spec.density)) grid.put(i, j, rng.in_range(spec.sigma_min, spec.sigma_max));
    }
  }
  return grid.build();
}

BlockInstance gen_block_sigma(const GenSpec& spec) {
  check_common(spec);
  if (spec.blocks < 1 || spec.block_size < 1) {
    throw InvalidArgument("blocks and block size must be positive");
  }
  Rng rng(spec.seed);
  const Index r = spec.block_size;
  const Index n = spec.blocks * r;
  Grid grid(n);
  for (Index b = 0; b < spec.blocks; ++b) {
    const Index base = b * r;
    const auto planted = rng.permutation(r);
    for (Index k = 0; k < r; ++k) {
      grid.put(base + k, base + planted[k], rng.in_range(spec.sigma_min, spec.sigma_max));
    }
    if (spec.irreducible_blocks && r > 1) {
      // Row k is matched to column planted[k]; an edge to planted[k+1] makes
      // the matched column digraph one cycle.
      for (Index k = 0; k < r; ++k) {
        const Index j = base + planted[(k + 1) % r];
        if (!grid.has(base + k, j)) grid.put(base + k, j, rng.in_range(spec.sigma_min, spec.sigma_max));
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = (i / r) * r; j < n; ++j) {
      if (grid.has(i, j)) continue;
      if (rng.chance(spec.density)) grid.put(i, j, rng.in_range(spec.sigma_min, spec.sigma_max));
    }
  }
  BlockInstance inst{grid.build(), BlockStructure::single_block(n)};
  inst.structure.block_sizes.assign(spec.blocks, r);
  return inst;
}

Shuffled shuffle_sigma(const SignatureMatrix& sigma, std::uint64_t seed) {
  Rng rng(seed);
  const Index n = sigma.size();
  auto row_perm = rng.permutation(n);
  auto col_perm = rng.permutation(n);
  std::vector<Index> row_pos(n), col_pos(n);
  for (Index k = 0; k < n; ++k) {
    row_pos[row_perm[k]] = k;
    col_pos[col_perm[k]] = k;
  }
  std::vector<Cell> cells;
  for (const Cell& e : sigma.entries()) cells.push_back({row_pos[e.row], col_pos[e.col], e.sigma});
  return Shuffled{SignatureMatrix(n, std::move(cells)), std::move(row_perm), std::move(col_perm)};
}

namespace {

template <typename Visit>
void for_each_transversal(const SignatureMatrix& sigma, Visit visit) {
  const Index n = sigma.size();
  if (n > kMaxBruteHvt) throw TooLarge(n, kMaxBruteHvt);
  // Dense lookup; absent cells are flagged rather than given a value.
  std::vector<char> present(static_cast<std::size_t>(n) * n, 0);
  std::vector<Order> value(present.size(), 0);
  for (const Cell& e : sigma.entries()) {
    present[e.row * n + e.col] = 1;
    value[e.row * n + e.col] = e.sigma;
  }
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Order total = 0;
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i) {
      const auto k = static_cast<std::size_t>(i) * n + perm[i];
      ok = present[k];
      total += value[k];
    }
    if (ok) visit(perm, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

BruteHvt brute_hvt(const SignatureMatrix& sigma) {
  BruteHvt best;
  bool found = false;
  for_each_transversal(sigma, [&](const std::vector<Index>& perm, Order total) {
    if (!found || total > best.value) {
      best.hvt.match = perm;
      best.value = total;
      found = true;
    }
  });
  if (!found) throw StructurallySingular();
  return best;
}

std::vector<Transversal> all_hvts(const SignatureMatrix& sigma) {
  const Order best = brute_hvt(sigma).value;
  std::vector<Transversal> out;
  for_each_transversal(sigma, [&](const std::vector<Index>& perm, Order total) {
    if (total == best) out.push_back(Transversal{perm});
  });
  return out;
}

BruteDual brute_smallest_dual(const SignatureMatrix& sigma, Exec exec) {
  const Index n = sigma.size();
  if (n > kMaxBruteDual) throw TooLarge(n, kMaxBruteDual);
  if (sigma.min_order().value_or(0) < 0) {
    throw InvalidArgument("exhaustive dual search needs nonnegative orders");
  }
  const Order target = brute_hvt(sigma).value;
  const Order box = static_cast<Order>(n) * sigma.max_order().value_or(0);

  std::uint64_t points = 1;
  for (Index k = 0; k < n; ++k) points *= static_cast<std::uint64_t>(box + 1);
  const std::uint64_t stride = points / static_cast<std::uint64_t>(box + 1);

  std::vector<Order> lo(n, std::numeric_limits<Order>::max());
  std::uint64_t count = 0;

  // Outer loop over c_0; each slice enumerates the remaining coordinates with
  // an odometer.
  auto scan_slice = [&](Order first, std::vector<Order>& local_lo, std::uint64_t& local_count) {
    std::vector<Order> c(n, 0);
    c[0] = first;
    for (std::uint64_t step = 0; step < stride; ++step) {
      if (objective(c, column_max_plus(sigma, c)) == target) {
        ++local_count;
        for (Index k = 0; k < n; ++k) local_lo[k] = std::min(local_lo[k], c[k]);
      }
      for (Index k = n - 1; k >= 1; --k) {
        if (++c[k] <= box) break;
        c[k] = 0;
      }
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      std::vector<Order> local_lo(n, std::numeric_limits<Order>::max());
      std::uint64_t local_count = 0;
#pragma omp for schedule(dynamic)
      for (Order first = 0; first <= box; ++first) scan_slice(first, local_lo, local_count);
#pragma omp critical
      {
        for (Index k = 0; k < n; ++k) lo[k] = std::min(lo[k], local_lo[k]);
        count += local_count;
      }
    }
  } else {
    for (Order first = 0; first <= box; ++first) scan_slice(first, lo, count);
  }

  if (count == 0) throw std::logic_error("no optimal point inside the enumeration box");
  auto d = column_max_plus(sigma, lo);
  if (objective(lo, d) != target) {
    throw std::logic_error("componentwise minimum of the optimal set is not optimal");
  }
  return BruteDual{Offsets{std::move(lo), std::move(d)}, box, count};
}

bool certify_smallest_by_subsets(const SignatureMatrix& sigma, const Offsets& off,
                                 Order hvt_value) {
  const Index n = sigma.size();
  if (n > kMaxSubsetCertificate) throw TooLarge(n, kMaxSubsetCertificate);
  if (off.c.size() != static_cast<std::size_t>(n) || off.d.size() != off.c.size()) return false;
  if (std::any_of(off.c.begin(), off.c.end(), [](Order v) { return v < 0; })) return false;
  if (column_max_plus(sigma, off.c) != off.d) return false;
  if (objective(off.c, off.d) != hvt_value) return false;

  std::vector<Order> c(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool nonneg = true;
    for (Index k = 0; k < n; ++k) {
      c[k] = off.c[k] - ((mask >> k) & 1u);
      nonneg = nonneg && c[k] >= 0;
    }
    if (!nonneg) continue;
    if (objective(c, column_max_plus(sigma, c)) == hvt_value) return false;
  }
  return true;
}

}  // namespace daestruct::oracle
