#pragma once

// Exhaustive reference solvers and seeded instance generators for tests,
// `daestruct verify` and `daestruct bench`. Nothing here calls the matching
// or fixed-point code it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "daestruct/btf.hpp"
#include "daestruct/parallel.hpp"
#include "daestruct/sigma.hpp"

namespace daestruct::oracle {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; the mappings below are fixed here
/// (std::uniform_int_distribution is not portable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// floor(next() * bound / 2^64); bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// (next() >> 11) * 2^-53, in [0, 1).
  double uniform01();
  /// uniform01() < p.
  bool chance(double p) { return uniform01() < p; }
  /// lo + below(hi - lo + 1).
  std::int64_t in_range(std::int64_t lo, std::int64_t hi);
  /// Fisher-Yates: for k = n-1 down to 1 swap p[k] with p[below(k+1)].
  std::vector<Index> permutation(Index n);

 private:
  std::mt19937_64 engine_;
};

struct GenSpec {
  /// Size for gen_sigma.
  Index n = 0;
  /// Block count and block size for gen_block_sigma.
  Index blocks = 0;
  Index block_size = 0;
  /// Probability that a cell off the planted transversal is finite.
  double density = 0.3;
  Order sigma_min = 0;
  Order sigma_max = 3;
  std::uint64_t seed = 0;
  /// Plant a cycle in each diagonal block so that it is irreducible.
  bool irreducible_blocks = true;
};

/// n x n matrix with a planted random transversal; every other cell is finite
/// with probability `density`. Cells are drawn in row-major order.
/// Throws InvalidArgument on a bad spec.
SignatureMatrix gen_sigma(const GenSpec& spec);

struct BlockInstance {
  SignatureMatrix sigma;
  BlockStructure structure;
};

/// blocks x block_size block upper-triangular matrix already in BTF order
/// (identity permutations). Finite cells appear only in diagonal blocks and
/// above them.
BlockInstance gen_block_sigma(const GenSpec& spec);

struct Shuffled {
  SignatureMatrix sigma;
  /// shuffled(i, j) = original(row_perm[i], col_perm[j]).
  std::vector<Index> row_perm;
  std::vector<Index> col_perm;
};

Shuffled shuffle_sigma(const SignatureMatrix& sigma, std::uint64_t seed);

constexpr Index kMaxBruteHvt = 8;
constexpr Index kMaxBruteDual = 5;
constexpr Index kMaxSubsetCertificate = 16;

struct BruteHvt {
  Transversal hvt;  // lexicographically first among the maximisers
  Order value = 0;
};

/// Enumerates all n! permutations. Throws TooLarge, StructurallySingular.
BruteHvt brute_hvt(const SignatureMatrix& sigma);

/// Every transversal of maximum value. Throws TooLarge, StructurallySingular.
std::vector<Transversal> all_hvts(const SignatureMatrix& sigma);

struct BruteDual {
  Offsets offsets;
  /// Side of the enumeration box [0, box_bound]^n; box_bound = n * max sigma.
  Order box_bound = 0;
  /// Number of optimal c found in the box.
  std::uint64_t optimal_points = 0;
};

/// Enumerates every c in [0, n * max sigma]^n, keeps those with
/// sum(d) - sum(c) equal to the brute-force HVT value (d = D(c)), and returns
/// the componentwise minimum, checking that it is itself optimal.
/// Requires nonnegative orders. Throws TooLarge, StructurallySingular,
/// InvalidArgument.
BruteDual brute_smallest_dual(const SignatureMatrix& sigma, Exec exec = Exec::parallel);

/// Minimality certificate independent of the fixed-point route: off must be
/// optimal (sum(d) - sum(c) == hvt_value, d = D(c)) and no c - 1_S, S a
/// nonempty row subset, may be optimal. Optimal c are closed under
/// componentwise min, so a non-smallest c always admits such a descent.
/// Throws TooLarge for n > kMaxSubsetCertificate.
bool certify_smallest_by_subsets(const SignatureMatrix& sigma, const Offsets& off,
                                 Order hvt_value);

}  // namespace daestruct::oracle
