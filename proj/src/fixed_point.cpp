#include "daestruct/fixed_point.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace daestruct {

namespace {

// Shared loop of both algorithms: starting from c', apply phi until c == c'.
FixedPointResult iterate_to_fixed_point(const SignatureMatrix& sigma, const Transversal& hvt,
                                        std::vector<Order> start, const FixedPointOptions& opts) {
  FixedPointResult result;
  result.hvt = hvt;
  if (opts.trace) *opts.trace = IterationTrace{start, {}, {}};

  const Order start_norm = l1_norm(start);
  std::vector<Order> prev = std::move(start);
  std::int64_t applications = 0;
  for (;;) {
    auto d = map_d(sigma, prev, opts.exec);
    auto next = map_c(sigma, hvt, d);
    ++applications;
    result.stats.phi_cell_ops += sigma.nnz();
    if (opts.trace) {
      opts.trace->iterates.push_back(next);
      opts.trace->d_iterates.push_back(d);
    }
    // Iterates are nondecreasing and never go below zero.
    assert(std::equal(prev.begin(), prev.end(), next.begin(),
                      [](Order a, Order b) { return a <= b; }));
    if (next == prev) break;
    prev = std::move(next);
  }

  result.offsets.c = std::move(prev);
  result.offsets.d = map_d(sigma, result.offsets.c, opts.exec);
  result.stats.phi_applications = applications;
  result.stats.converged = true;
  result.stats.bound = l1_norm(result.offsets.c) - start_norm + 1;
  return result;
}

void require_size(const SignatureMatrix& sigma, std::size_t len, const char* what) {
  if (len != static_cast<std::size_t>(sigma.size())) {
    throw DimensionMismatch(std::string(what) + " has length " + std::to_string(len) +
                            ", expected " + std::to_string(sigma.size()));
  }
}

}  // namespace

FixedPointResult smallest_offsets(const SignatureMatrix& sigma, const FixedPointOptions& opts) {
  MatchingStats ms;
  const Transversal hvt = find_hvt(sigma, &ms);
  auto result = smallest_offsets_with(sigma, hvt, opts);
  result.stats.matching_ops = ms.ops;
  return result;
}

FixedPointResult smallest_offsets_with(const SignatureMatrix& sigma, const Transversal& hvt,
                                       const FixedPointOptions& opts) {
  require_transversal(sigma, hvt);
  return iterate_to_fixed_point(sigma, hvt, std::vector<Order>(sigma.size(), 0), opts);
}

FixedPointResult smallest_offsets_with_param(const SignatureMatrix& sigma, const ParamVector& p,
                                             const FixedPointOptions& opts) {
  require_size(sigma, p.values().size(), "parameter");
  MatchingStats ms;
  const Transversal hvt = find_hvt(sigma, &ms);
  auto result = smallest_offsets_with_param(sigma, p, hvt, opts);
  result.stats.matching_ops = ms.ops;
  return result;
}

FixedPointResult smallest_offsets_with_param(const SignatureMatrix& sigma, const ParamVector& p,
                                             const Transversal& hvt,
                                             const FixedPointOptions& opts) {
  require_size(sigma, p.values().size(), "parameter");
  require_transversal(sigma, hvt);
  // The clamp happens once, on the starting vector only.
  auto start = map_c(sigma, hvt, p.values());
  for (auto& v : start) v = std::max<Order>(v, 0);
  return iterate_to_fixed_point(sigma, hvt, std::move(start), opts);
}

bool verify_smallest(const SignatureMatrix& sigma, const Offsets& off) {
  if (!is_dual_feasible(sigma, off)) return false;
  Transversal hvt;
  try {
    hvt = find_hvt(sigma);
  } catch (const StructurallySingular&) {
    return false;
  }
  if (!is_tight_on(sigma, hvt, off)) return false;
  try {
    if (phi(sigma, hvt, off.c) != off.c) return false;
    if (map_d(sigma, off.c) != off.d) return false;
    return smallest_offsets_with(sigma, hvt).offsets == off;
  } catch (const OverflowError&) {
    return false;
  }
}

}  // namespace daestruct
