#include "daestruct/block_solver.hpp"

#include <algorithm>
#include <string>

namespace daestruct {

SigmaSlice row_add(const SigmaSlice& block, std::span<const Order> q) {
  if (static_cast<Index>(q.size()) != block.rows) {
    throw DimensionMismatch("row_add: q has " + std::to_string(q.size()) + " entries for " +
                            std::to_string(block.rows) + " rows");
  }
  SigmaSlice out = block;
  for (Cell& e : out.cells) e.sigma = checked_add(e.sigma, q[e.row], "row_add");
  return out;
}

std::vector<ExtOrder> col_max(const SigmaSlice& block) {
  std::vector<ExtOrder> w(block.cols);
  for (const Cell& e : block.cells) {
    if (!w[e.col] || *w[e.col] < e.sigma) w[e.col] = e.sigma;
  }
  return w;
}

std::vector<Order> e_max(std::span<const ExtOrder> a, std::span<const Order> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("e_max: lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  std::vector<Order> q(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k]) q[k] = std::max(q[k], *a[k]);
  }
  return q;
}

BlockSolveResult block_smallest_offsets(const SignatureMatrix& sigma, const BlockStructure& bs,
                                        Exec exec) {
  if (auto why = btf_shape_violation(sigma, bs); !why.empty()) {
    throw InvalidBlockStructure(why);
  }
  const Index n = sigma.size();
  const Index nblocks = bs.block_count();

  BlockSolveResult result;
  result.offsets.c.assign(n, 0);
  result.offsets.d.assign(n, 0);
  result.hvt.match.assign(n, -1);

  // c of the rows solved so far, in permuted order. The stacked couplings of
  // block i are row-shifted by it, so every earlier block's update is
  // applied exactly once and stays in effect for all later blocks.
  std::vector<Order> c_perm;
  c_perm.reserve(n);
  Index start = 0;
  for (Index b = 0; b < nblocks; ++b) {
    const Index size = bs.block_sizes[b];
    std::vector<Order> p;
    if (b == 0) {
      p.assign(size, 0);
    } else {
      const auto stack = row_add(extract_coupling_stack(sigma, bs, b), c_perm);
      p = e_max(col_max(stack), std::vector<Order>(size, 0));
    }

    const auto block = extract_block(sigma, bs, b);
    auto solved = smallest_offsets_with_param(block, ParamVector(p), FixedPointOptions{exec, nullptr});

    for (Index k = 0; k < size; ++k) {
      const Index row = bs.row_perm[start + k];
      const Index col = bs.col_perm[start + k];
      result.offsets.c[row] = solved.offsets.c[k];
      result.offsets.d[col] = solved.offsets.d[k];
      result.hvt.match[row] = bs.col_perm[start + solved.hvt.match[k]];
      c_perm.push_back(solved.offsets.c[k]);
    }
    result.block_stats.push_back(solved.stats);
    result.params.push_back(std::move(p));
    start += size;
  }
  return result;
}

SolveStats total_stats(std::span<const SolveStats> per_block) {
  SolveStats t;
  t.converged = true;
  for (const auto& s : per_block) {
    t.phi_applications += s.phi_applications;
    t.bound += s.bound;
    t.matching_ops += s.matching_ops;
    t.phi_cell_ops += s.phi_cell_ops;
    t.converged = t.converged && s.converged;
  }
  return t;
}

}  // namespace daestruct
