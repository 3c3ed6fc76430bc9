#include "daestruct/assignment.hpp"
#include "daestruct/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace daestruct;

TEST_CASE("e1 has a unique highest-value transversal") {
  const auto s = fixtures::e1();
  MatchingStats stats;
  const auto t = find_hvt(s, &stats);
  CHECK(t.match == std::vector<Index>{0, 2, 1});
  CHECK(transversal_value(s, t) == 2);
  CHECK(stats.augmentations == 3);
  CHECK(stats.ops > 0);
  CHECK(oracle::all_hvts(s).size() == 1);
}

TEST_CASE("structurally singular patterns are rejected") {
  const SignatureMatrix s(3, {{0, 0, 1}, {1, 0, 0}, {2, 1, 0}, {2, 2, 0}});
  CHECK_THROWS_AS(find_hvt(s), StructurallySingular);
  CHECK_THROWS_AS(find_any_transversal(s), StructurallySingular);
  CHECK_THROWS_AS(find_hvt(SignatureMatrix(1, {})), StructurallySingular);
}

TEST_CASE("single cell and diagonal matrices") {
  CHECK(find_hvt(SignatureMatrix(1, {{0, 0, 5}})).match == std::vector<Index>{0});
  const SignatureMatrix diag(3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
  CHECK(find_hvt(diag).match == std::vector<Index>{0, 1, 2});
}

TEST_CASE("a larger cell off the cheap matching wins") {
  // Both permutations are transversals; the anti-diagonal has value 7.
  const SignatureMatrix s(2, {{0, 0, 1}, {0, 1, 3}, {1, 0, 4}, {1, 1, 1}});
  const auto t = find_hvt(s);
  CHECK(t.match == std::vector<Index>{1, 0});
  CHECK(transversal_value(s, t) == 7);
}

TEST_CASE("negative orders are handled") {
  const SignatureMatrix s(2, {{0, 0, -3}, {0, 1, -1}, {1, 0, -1}, {1, 1, -5}});
  const auto t = find_hvt(s);
  CHECK(transversal_value(s, t) == -2);
}

TEST_CASE("ties are broken deterministically") {
  const SignatureMatrix s(3, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {2, 2, 0}});
  const auto a = find_hvt(s);
  const auto b = find_hvt(s);
  CHECK(a == b);
  CHECK(transversal_value(s, a) == 2);
}

TEST_CASE("transversal_value rejects a non-transversal") {
  CHECK_THROWS_AS(transversal_value(fixtures::e1(), Transversal{{0, 1, 2}}), InvalidArgument);
}

TEST_CASE("HVT value matches exhaustive enumeration on random patterns") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    oracle::GenSpec spec;
    spec.n = static_cast<Index>(1 + seed % 8);
    spec.density = 0.15 + 0.1 * static_cast<double>(seed % 6);
    spec.sigma_min = seed % 5 == 0 ? -3 : 0;
    spec.sigma_max = 4;
    spec.seed = seed;
    const auto s = oracle::gen_sigma(spec);
    CAPTURE(seed);
    const auto t = find_hvt(s);
    REQUIRE(is_transversal_of(s, t));
    CHECK(transversal_value(s, t) == oracle::brute_hvt(s).value);
    CHECK(is_transversal_of(s, find_any_transversal(s)));
  }
}

TEST_CASE("any transversal exists exactly when an HVT does") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    oracle::Rng rng(seed);
    const Index n = static_cast<Index>(1 + rng.below(6));
    std::vector<Cell> cells;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (rng.chance(0.3)) cells.push_back({i, j, 0});
      }
    }
    const SignatureMatrix s(n, cells);
    bool brute = true;
    try {
      oracle::brute_hvt(s);
    } catch (const StructurallySingular&) {
      brute = false;
    }
    CAPTURE(seed);
    bool any = true;
    try {
      find_any_transversal(s);
    } catch (const StructurallySingular&) {
      any = false;
    }
    bool hvt = true;
    try {
      find_hvt(s);
    } catch (const StructurallySingular&) {
      hvt = false;
    }
    CHECK(any == brute);
    CHECK(hvt == brute);
  }
}
