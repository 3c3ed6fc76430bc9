#include "daestruct/block_solver.hpp"
#include "daestruct/fixed_point.hpp"
#include "daestruct/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace daestruct;

using Vec = std::vector<Order>;

TEST_CASE("row_add, col_max and e_max") {
  const SigmaSlice b{2, 3, {{0, 0, 1}, {0, 2, 4}, {1, 0, 2}}};
  const auto shifted = row_add(b, Vec{10, 20});
  CHECK(shifted.cells == std::vector<Cell>{{0, 0, 11}, {0, 2, 14}, {1, 0, 22}});
  const auto w = col_max(shifted);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == 22);
  CHECK_FALSE(w[1].has_value());
  CHECK(w[2] == 14);
  CHECK(e_max(w, Vec{0, 0, 0}) == Vec{22, 0, 14});
  CHECK(e_max(std::vector<ExtOrder>{-5, std::nullopt}, Vec{0, 3}) == Vec{0, 3});
  CHECK_THROWS_AS(row_add(b, Vec{1}), DimensionMismatch);
  CHECK_THROWS_AS(e_max(w, Vec{0}), DimensionMismatch);
  CHECK(col_max(SigmaSlice{0, 2, {}}) == std::vector<ExtOrder>{std::nullopt, std::nullopt});
}

TEST_CASE("block solve of e6") {
  const auto s = fixtures::e6();
  const BlockStructure bs{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}, {3, 3}};
  const auto r = block_smallest_offsets(s, bs);
  CHECK(r.offsets.c == Vec{0, 0, 1, 1, 2, 3});
  CHECK(r.offsets.d == Vec{2, 1, 0, 3, 3, 2});
  REQUIRE(r.params.size() == 2);
  CHECK(r.params[0] == Vec{0, 0, 0});
  CHECK(r.params[1] == Vec{0, 0, 2});
  REQUIRE(r.block_stats.size() == 2);
  CHECK(r.block_stats[0].phi_applications == 2);
  CHECK(r.block_stats[1].phi_applications == 3);
  CHECK(r.block_stats[1].bound == 5);
  CHECK(r.hvt.match == std::vector<Index>{0, 2, 1, 3, 5, 4});
  CHECK(smallest_offsets(s).offsets == r.offsets);
  const auto total = total_stats(r.block_stats);
  CHECK(total.phi_applications == 5);
  CHECK(total.converged);
}

TEST_CASE("block solve of a permuted e6 maps results back") {
  const auto sh = oracle::shuffle_sigma(fixtures::e6(), 42);
  const auto bs = fine_btf(sh.sigma);
  const auto r = block_smallest_offsets(sh.sigma, bs);
  CHECK(r.offsets == smallest_offsets(sh.sigma).offsets);
  for (Index i = 0; i < 6; ++i) {
    CHECK(r.offsets.c[i] == Vec{0, 0, 1, 1, 2, 3}[sh.row_perm[i]]);
    CHECK(r.offsets.d[i] == Vec{2, 1, 0, 3, 3, 2}[sh.col_perm[i]]);
  }
}

TEST_CASE("bad structures are rejected") {
  const auto s = fixtures::e6();
  CHECK_THROWS_AS(block_smallest_offsets(s, BlockStructure{{0, 1, 2, 3, 4, 5},
                                                            {3, 4, 5, 0, 1, 2},
                                                            {3, 3}}),
                  InvalidBlockStructure);
  CHECK_THROWS_AS(block_smallest_offsets(s, BlockStructure{{0, 1, 2}, {0, 1, 2}, {3}}),
                  InvalidBlockStructure);
  const SignatureMatrix singular_block(3, {{0, 0, 1}, {0, 2, 0}, {1, 1, 0}, {2, 1, 0}});
  CHECK_THROWS_AS(
      block_smallest_offsets(singular_block, BlockStructure{{0, 1, 2}, {0, 1, 2}, {1, 2}}),
      StructurallySingular);
}

TEST_CASE("one block degenerates to the global solve") {
  const auto s = fixtures::e1();
  const auto block = block_smallest_offsets(s, BlockStructure::single_block(3));
  const auto global = smallest_offsets(s);
  CHECK(block.offsets == global.offsets);
  REQUIRE(block.block_stats.size() == 1);
  CHECK(block.block_stats[0] == global.stats);
}

TEST_CASE("block and global offsets agree on generated instances") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    oracle::Rng rng(seed);
    oracle::GenSpec spec;
    spec.blocks = static_cast<Index>(1 + rng.below(8));
    spec.block_size = static_cast<Index>(1 + rng.below(7));
    spec.density = 0.05 + 0.5 * rng.uniform01();
    spec.sigma_max = static_cast<Order>(rng.in_range(0, 4));
    spec.seed = seed;
    spec.irreducible_blocks = seed % 4 != 0;
    const auto inst = oracle::gen_block_sigma(spec);
    CAPTURE(seed);
    const auto global = smallest_offsets(inst.sigma);
    const auto block = block_smallest_offsets(inst.sigma, inst.structure);
    CHECK(block.offsets == global.offsets);
    CHECK(block_smallest_offsets(inst.sigma, inst.structure, Exec::parallel).offsets ==
          global.offsets);
    const auto sh = oracle::shuffle_sigma(inst.sigma, seed * 31);
    CHECK(block_smallest_offsets(sh.sigma, fine_btf(sh.sigma)).offsets ==
          smallest_offsets(sh.sigma).offsets);
  }
}
