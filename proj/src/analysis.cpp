#include "daestruct/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "daestruct/assignment.hpp"

namespace daestruct {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::global: return "global";
    case Method::block: return "block";
    case Method::automatic: return "auto";
  }
  return "auto";
}

Method parse_method(const std::string& s) {
  if (s == "global") return Method::global;
  if (s == "block") return Method::block;
  if (s == "auto") return Method::automatic;
  throw InvalidArgument("unknown method '" + s + "' (expected global, block or auto)");
}

Index structural_index(const Offsets& off) {
  Order max_c = 0;
  for (Order v : off.c) max_c = std::max(max_c, v);
  const bool all_positive =
      std::all_of(off.d.begin(), off.d.end(), [](Order v) { return v > 0; });
  return static_cast<Index>(max_c + (all_positive ? 0 : 1));
}

std::vector<JacobianCell> jacobian_pattern(const SignatureMatrix& sigma, const Offsets& off) {
  std::vector<JacobianCell> cells;
  for (const Cell& e : sigma.entries()) {
    if (off.d[e.col] - off.c[e.row] == e.sigma) cells.push_back({e.row, e.col, e.sigma});
  }
  return cells;
}

namespace {

void finish_report(const SignatureMatrix& sigma, AnalysisReport& r) {
  r.n = sigma.size();
  r.hvt_value = transversal_value(sigma, r.hvt);
  r.structural_index = structural_index(r.offsets);
  r.jacobian_pattern = jacobian_pattern(sigma, r.offsets);
  // Complementary slackness puts every HVT cell in the pattern.
  if (!is_tight_on(sigma, r.hvt, r.offsets)) {
    throw std::logic_error("offsets are not tight on the transversal");
  }
}

AnalysisReport global_report(const SignatureMatrix& sigma, Exec exec) {
  auto solved = smallest_offsets(sigma, FixedPointOptions{exec, nullptr});
  AnalysisReport r;
  r.method = "global";
  r.offsets = std::move(solved.offsets);
  r.hvt = std::move(solved.hvt);
  r.stats = {solved.stats};
  return r;
}

AnalysisReport block_report(const SignatureMatrix& sigma, BlockStructure bs, Exec exec) {
  auto solved = block_smallest_offsets(sigma, bs, exec);
  AnalysisReport r;
  r.method = "block";
  r.offsets = std::move(solved.offsets);
  r.hvt = std::move(solved.hvt);
  r.stats = std::move(solved.block_stats);
  r.block_structure = std::move(bs);
  return r;
}

}  // namespace

AnalysisReport analyze(const SignatureMatrix& sigma, Method method, Exec exec) {
  const bool nonnegative = sigma.min_order().value_or(0) >= 0;
  AnalysisReport r;
  switch (method) {
    case Method::global:
      r = global_report(sigma, exec);
      break;
    case Method::block:
      if (!nonnegative) {
        throw InvalidArgument("block method requires nonnegative derivative orders");
      }
      r = block_report(sigma, fine_btf(sigma), exec);
      break;
    case Method::automatic: {
      auto bs = fine_btf(sigma);
      if (bs.block_count() > 1 && nonnegative) {
        r = block_report(sigma, std::move(bs), exec);
      } else {
        r = global_report(sigma, exec);
        r.block_structure = std::move(bs);
      }
      break;
    }
  }
  finish_report(sigma, r);
  return r;
}

AnalysisReport analyze_with_param(const SignatureMatrix& sigma, const ParamVector& p, Exec exec) {
  auto solved = smallest_offsets_with_param(sigma, p, FixedPointOptions{exec, nullptr});
  AnalysisReport r;
  r.method = "global";
  r.offsets = std::move(solved.offsets);
  r.hvt = std::move(solved.hvt);
  r.stats = {solved.stats};
  r.param = std::vector<Order>(p.values().begin(), p.values().end());
  finish_report(sigma, r);
  return r;
}

Names Names::defaults(Index n) {
  Names names;
  for (Index k = 1; k <= n; ++k) {
    names.equations.push_back("f" + std::to_string(k));
    names.variables.push_back("x" + std::to_string(k));
  }
  return names;
}

}  // namespace daestruct
