// Serial versus OpenMP offset kernels, and global versus block solving.
//
//   ./build/bench/bench_kernels --benchmark_filter=Phi

#include <benchmark/benchmark.h>

#include <algorithm>

#include "daestruct/assignment.hpp"
#include "daestruct/block_solver.hpp"
#include "daestruct/fixed_point.hpp"
#include "daestruct/oracle.hpp"

using namespace daestruct;

namespace {

// About 16 cells per row plus the diagonal; the dense generator would need an
// n x n scratch grid at these sizes.
SignatureMatrix kernel_matrix(Index n) {
  oracle::Rng rng(17);
  std::vector<Cell> cells;
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> cols{i};
    for (int k = 0; k < 16; ++k) cols.push_back(static_cast<Index>(rng.below(n)));
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (Index j : cols) cells.push_back({i, j, rng.in_range(0, 5)});
  }
  return SignatureMatrix(n, std::move(cells));
}

std::vector<Order> start_vector(Index n) {
  oracle::Rng rng(23);
  std::vector<Order> c(n);
  for (auto& v : c) v = rng.in_range(0, 8);
  return c;
}

void BM_MapD(benchmark::State& state, Exec exec) {
  const auto n = static_cast<Index>(state.range(0));
  const auto s = kernel_matrix(n);
  const auto c = start_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(map_d(s, c, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.nnz()));
}

void BM_Phi(benchmark::State& state, Exec exec) {
  const auto n = static_cast<Index>(state.range(0));
  const auto s = kernel_matrix(n);
  const auto t = find_any_transversal(s);
  const auto c = start_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(phi(s, t, c, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.nnz()));
}

oracle::BlockInstance block_instance(Index blocks) {
  oracle::GenSpec spec;
  spec.blocks = blocks;
  spec.block_size = 8;
  spec.density = 0.3;
  spec.seed = 5;
  return oracle::gen_block_sigma(spec);
}

void BM_GlobalSolve(benchmark::State& state) {
  const auto inst = block_instance(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smallest_offsets(inst.sigma));
}

void BM_BlockSolve(benchmark::State& state) {
  const auto inst = block_instance(static_cast<Index>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(block_smallest_offsets(inst.sigma, inst.structure));
}

}  // namespace

BENCHMARK_CAPTURE(BM_MapD, serial, Exec::serial)->RangeMultiplier(8)->Range(1 << 9, 1 << 18);
BENCHMARK_CAPTURE(BM_MapD, parallel, Exec::parallel)->RangeMultiplier(8)->Range(1 << 9, 1 << 18);
BENCHMARK_CAPTURE(BM_Phi, serial, Exec::serial)->RangeMultiplier(8)->Range(1 << 9, 1 << 18);
BENCHMARK_CAPTURE(BM_Phi, parallel, Exec::parallel)->RangeMultiplier(8)->Range(1 << 9, 1 << 18);
BENCHMARK(BM_GlobalSolve)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_BlockSolve)->RangeMultiplier(2)->Range(2, 32);

BENCHMARK_MAIN();
