#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daestruct/block_solver.hpp"
#include "daestruct/btf.hpp"
#include "daestruct/fixed_point.hpp"

namespace daestruct {

enum class Method { global, block, automatic };

const char* to_string(Method m) noexcept;
/// Accepts "global", "block", "auto". Throws InvalidArgument.
Method parse_method(const std::string& s);

/// A Jacobian cell that may be nonzero: d_j - c_i == sigma_ij, i.e. equation i
/// depends on derivative `order` of variable j.
struct JacobianCell {
  Index row = 0;
  Index col = 0;
  Order order = 0;

  friend bool operator==(const JacobianCell&, const JacobianCell&) = default;
};

struct AnalysisReport {
  Index n = 0;
  Offsets offsets;
  Index structural_index = 0;
  Transversal hvt;
  Order hvt_value = 0;
  std::vector<JacobianCell> jacobian_pattern;  // row-major
  /// "global" or "block": the route that produced the offsets.
  std::string method;
  /// One entry for a global solve, one per diagonal block otherwise.
  std::vector<SolveStats> stats;
  std::optional<BlockStructure> block_structure;
  /// Lower bounds on d the offsets were computed against, if any.
  std::optional<std::vector<Order>> param;
};

/// max_i c_i, plus one when some d_j is not positive.
Index structural_index(const Offsets& off);

std::vector<JacobianCell> jacobian_pattern(const SignatureMatrix& sigma, const Offsets& off);

/// Runs the whole pipeline. `automatic` computes the fine BTF and solves
/// block-wise when it has more than one block.
/// Throws StructurallySingular; InvalidArgument for `block` on a matrix with
/// negative orders (the block recursion assumes d >= 0).
AnalysisReport analyze(const SignatureMatrix& sigma, Method method = Method::automatic,
                       Exec exec = Exec::serial);

/// Global solve with lower bounds p on d.
AnalysisReport analyze_with_param(const SignatureMatrix& sigma, const ParamVector& p,
                                  Exec exec = Exec::serial);

/// Display names used by the renderers.
struct Names {
  std::vector<std::string> equations;
  std::vector<std::string> variables;

  /// f1..fn and x1..xn.
  static Names defaults(Index n);
};

/// Stable JSON: n, equations, variables, method, offsets{c,d},
/// structural_index, hvt, hvt_value, jacobian_pattern, schedule, stats,
/// block_structure, param, numeric_jacobian.
std::string report_to_json(const AnalysisReport& r, const Names& names, int indent = 2);

/// The signature matrix with starred HVT cells, c in the right margin and d
/// underneath, followed by a summary. `styled` adds ANSI bold to HVT cells.
std::string report_to_text(const SignatureMatrix& sigma, const AnalysisReport& r,
                           const Names& names, bool styled = false);

}  // namespace daestruct
