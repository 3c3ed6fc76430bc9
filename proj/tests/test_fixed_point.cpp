#include <algorithm>

#include "daestruct/assignment.hpp"
#include "daestruct/fixed_point.hpp"
#include "daestruct/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace daestruct;

namespace {

using Vec = std::vector<Order>;

SignatureMatrix random_sigma(std::uint64_t seed, Index max_n, Order sigma_min = 0) {
  oracle::Rng rng(seed);
  oracle::GenSpec spec;
  spec.n = static_cast<Index>(1 + rng.below(static_cast<std::uint64_t>(max_n)));
  spec.density = 0.1 + 0.6 * rng.uniform01();
  spec.sigma_min = sigma_min;
  spec.sigma_max = 3;
  spec.seed = seed;
  return oracle::gen_sigma(spec);
}

Order objective(const Offsets& off) {
  Order z = 0;
  for (Order v : off.d) z += v;
  for (Order v : off.c) z -= v;
  return z;
}

}  // namespace

TEST_CASE("e1 offsets and iteration count") {
  IterationTrace trace;
  const auto r = smallest_offsets(fixtures::e1(), {Exec::serial, &trace});
  CHECK(r.offsets.c == Vec{0, 0, 1});
  CHECK(r.offsets.d == Vec{2, 1, 0});
  CHECK(r.hvt.match == std::vector<Index>{0, 2, 1});
  CHECK(r.stats.phi_applications == 2);
  CHECK(r.stats.bound == 2);
  CHECK(r.stats.converged);
  CHECK(trace.start == Vec{0, 0, 0});
  CHECK(trace.iterates == std::vector<Vec>{{0, 0, 1}, {0, 0, 1}});
  CHECK(verify_smallest(fixtures::e1(), r.offsets));
}

TEST_CASE("parameterised iteration on the second example") {
  IterationTrace trace;
  const auto r = smallest_offsets_with_param(fixtures::e1(), ParamVector({0, 0, 2}),
                                             {Exec::serial, &trace});
  CHECK(trace.start == Vec{0, 2, 0});
  CHECK(trace.iterates == std::vector<Vec>{{0, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  CHECK(trace.d_iterates == std::vector<Vec>{{2, 3, 2}, {3, 3, 2}, {3, 3, 2}});
  CHECK(r.offsets.c == Vec{1, 2, 3});
  CHECK(r.offsets.d == Vec{3, 3, 2});
  CHECK(r.stats.phi_applications == 3);
  // ||c*|| - ||start|| + 1 = 6 - 2 + 1
  CHECK(r.stats.bound == 5);
}

TEST_CASE("a zero parameter reproduces the plain iteration") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto s = random_sigma(seed, 10);
    CAPTURE(seed);
    const auto plain = smallest_offsets(s);
    const auto param = smallest_offsets_with_param(s, ParamVector::zeros(s.size()));
    CHECK(plain.offsets == param.offsets);
    CHECK(plain.stats.phi_applications == param.stats.phi_applications);
  }
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(smallest_offsets(SignatureMatrix(2, {{0, 0, 1}, {1, 0, 1}})),
                  StructurallySingular);
  CHECK_THROWS_AS(smallest_offsets_with_param(fixtures::e1(), ParamVector({0, 0})),
                  DimensionMismatch);
  CHECK_THROWS_AS(smallest_offsets_with(fixtures::e1(), Transversal{{0, 1, 2}}), InvalidArgument);
}

TEST_CASE("phi is monotone and shift-equivariant") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto s = random_sigma(seed, 12, seed % 3 == 0 ? -2 : 0);
    const auto t = find_hvt(s);
    oracle::Rng rng(seed * 7919);
    Vec lo(s.size()), hi(s.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = rng.in_range(-3, 5);
      hi[i] = lo[i] + rng.in_range(0, 3);
    }
    CAPTURE(seed);
    const auto a = phi(s, t, lo);
    const auto b = phi(s, t, hi);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] <= b[i]);

    const Order k = rng.in_range(1, 4);
    Vec shifted = lo;
    for (auto& v : shifted) v += k;
    auto expect = a;
    for (auto& v : expect) v += k;
    CHECK(phi(s, t, shifted) == expect);
  }
}

TEST_CASE("iterates increase to the fixed point within the bound") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto s = random_sigma(seed, 14);
    IterationTrace trace;
    const auto r = smallest_offsets(s, {Exec::serial, &trace});
    CAPTURE(seed);
    REQUIRE(!trace.iterates.empty());
    Vec prev = trace.start;
    for (const auto& it : trace.iterates) {
      for (std::size_t i = 0; i < it.size(); ++i) CHECK(prev[i] <= it[i]);
      prev = it;
    }
    CHECK(trace.iterates.back() == r.offsets.c);
    CHECK(r.stats.phi_applications <= l1_norm(r.offsets.c) + 1);
    CHECK(r.stats.bound == l1_norm(r.offsets.c) + 1);
    CHECK(is_dual_feasible(s, r.offsets));
    CHECK(is_tight_on(s, r.hvt, r.offsets));
    CHECK(objective(r.offsets) == transversal_value(s, r.hvt));
    CHECK(verify_smallest(s, r.offsets));
  }
}

TEST_CASE("offsets equal the exhaustive smallest dual") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto s = random_sigma(seed, oracle::kMaxBruteDual);
    CAPTURE(seed);
    CHECK(smallest_offsets(s).offsets == oracle::brute_smallest_dual(s).offsets);
  }
}

TEST_CASE("offsets do not depend on which HVT is used") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto s = random_sigma(seed, 6);
    const auto base = smallest_offsets(s).offsets;
    CAPTURE(seed);
    for (const auto& t : oracle::all_hvts(s)) {
      CHECK(smallest_offsets_with(s, t).offsets == base);
    }
  }
}

TEST_CASE("parallel iteration gives the same result and statistics") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    oracle::GenSpec spec;
    spec.n = 150;
    spec.density = 0.03;
    spec.seed = seed;
    const auto s = oracle::gen_sigma(spec);
    const auto a = smallest_offsets(s, {Exec::serial, nullptr});
    const auto b = smallest_offsets(s, {Exec::parallel, nullptr});
    CAPTURE(seed);
    CHECK(a.offsets == b.offsets);
    CHECK(a.stats == b.stats);
  }
}

TEST_CASE("parameterised offsets are the smallest ones above p") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto s = random_sigma(seed, 7);
    oracle::Rng rng(seed + 99);
    Vec p(s.size());
    for (auto& v : p) v = rng.chance(0.4) ? rng.in_range(0, 6) : 0;
    IterationTrace trace;
    const auto r = smallest_offsets_with_param(s, ParamVector(p), {Exec::serial, &trace});
    const auto& off = r.offsets;
    CAPTURE(seed);
    for (std::size_t j = 0; j < p.size(); ++j) CHECK(off.d[j] >= p[j]);
    CHECK(is_dual_feasible(s, off));
    CHECK(is_tight_on(s, r.hvt, off));
    CHECK(r.stats.phi_applications <= l1_norm(off.c) - l1_norm(trace.start) + 1);

    // No c - 1_S stays optimal and keeps d above p.
    const Index n = s.size();
    const Order target = transversal_value(s, r.hvt);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Vec c = off.c;
      bool ok = true;
      for (Index i = 0; i < n; ++i) {
        c[i] -= (mask >> i) & 1u;
        ok = ok && c[i] >= 0;
      }
      if (!ok) continue;
      const auto d = map_d(s, c);
      bool above = true;
      for (Index j = 0; j < n; ++j) above = above && d[j] >= p[j];
      if (above) CHECK(objective(Offsets{c, d}) != target);
    }
  }
}

TEST_CASE("verify_smallest rejects non-minimal offsets") {
  const auto s = fixtures::e1();
  CHECK_FALSE(verify_smallest(s, Offsets{{1, 1, 2}, {3, 2, 1}}));
  CHECK_FALSE(verify_smallest(s, Offsets{{0, 0, 0}, {2, 1, 0}}));
}
