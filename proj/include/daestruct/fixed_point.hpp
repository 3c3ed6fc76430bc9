#pragma once

// Smallest dual-optimal offsets by fixed-point iteration of
// phi_T = map_c o map_d, with and without lower bounds on d.

#include <cstdint>
#include <vector>

#include "daestruct/assignment.hpp"
#include "daestruct/parallel.hpp"
#include "daestruct/sigma.hpp"

namespace daestruct {

struct SolveStats {
  /// One application = one map_d pass followed by one map_c pass.
  std::int64_t phi_applications = 0;
  bool converged = false;
  /// Iteration bound for this solve: |c*|_1 - |c_init|_1 + 1, where c_init is
  /// the starting vector (0 without a parameter, max(map_c(p), 0) with one).
  std::int64_t bound = 0;
  /// Work spent by the assignment solver for this solve.
  std::uint64_t matching_ops = 0;
  /// Finite cells visited by map_d over all applications.
  std::uint64_t phi_cell_ops = 0;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

/// Optional record of the iteration, mirroring the tables one writes by hand:
/// start is c' before the loop, iterates[k] is the c produced by the k-th
/// application and d_iterates[k] the d it was computed from.
struct IterationTrace {
  std::vector<Order> start;
  std::vector<std::vector<Order>> iterates;
  std::vector<std::vector<Order>> d_iterates;
};

struct FixedPointOptions {
  Exec exec = Exec::serial;
  IterationTrace* trace = nullptr;
};

struct FixedPointResult {
  Offsets offsets;
  SolveStats stats;
  Transversal hvt;
};

/// Unique componentwise-smallest optimal offsets. Throws StructurallySingular.
FixedPointResult smallest_offsets(const SignatureMatrix& sigma,
                                  const FixedPointOptions& opts = {});

/// Same, iterating with a caller-supplied transversal. The transversal must be
/// an HVT for the result to be optimal; the function does not check that.
FixedPointResult smallest_offsets_with(const SignatureMatrix& sigma, const Transversal& hvt,
                                       const FixedPointOptions& opts = {});

/// Smallest optimal offsets subject to d >= p. Throws StructurallySingular,
/// DimensionMismatch.
FixedPointResult smallest_offsets_with_param(const SignatureMatrix& sigma, const ParamVector& p,
                                             const FixedPointOptions& opts = {});

FixedPointResult smallest_offsets_with_param(const SignatureMatrix& sigma, const ParamVector& p,
                                             const Transversal& hvt,
                                             const FixedPointOptions& opts = {});

/// True iff off is feasible, tight on an HVT, a fixed point of phi with
/// d = map_d(c), and equal to the smallest such pair.
bool verify_smallest(const SignatureMatrix& sigma, const Offsets& off);

}  // namespace daestruct
