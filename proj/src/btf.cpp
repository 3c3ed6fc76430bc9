#include "daestruct/btf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

#include "daestruct/assignment.hpp"
#include "json.hpp"

namespace daestruct {

namespace {

struct Layout {
  std::vector<Index> pos_of_row;
  std::vector<Index> pos_of_col;
  std::vector<Index> block_of_pos;
  std::vector<Index> starts;  // size block_count + 1
};

// Assumes the structure has already passed shape checks.
Layout make_layout(const BlockStructure& bs) {
  const auto n = bs.row_perm.size();
  Layout l;
  l.pos_of_row.assign(n, 0);
  l.pos_of_col.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    l.pos_of_row[bs.row_perm[k]] = static_cast<Index>(k);
    l.pos_of_col[bs.col_perm[k]] = static_cast<Index>(k);
  }
  l.starts.assign(1, 0);
  l.block_of_pos.reserve(n);
  for (Index b = 0; b < bs.block_count(); ++b) {
    l.starts.push_back(l.starts.back() + bs.block_sizes[b]);
    for (Index k = 0; k < bs.block_sizes[b]; ++k) l.block_of_pos.push_back(b);
  }
  return l;
}

bool is_permutation_of_n(const std::vector<Index>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (Index v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::string shape_violation(Index n, const BlockStructure& bs) {
  if (!is_permutation_of_n(bs.row_perm, n)) return "row_perm is not a permutation of [0, n)";
  if (!is_permutation_of_n(bs.col_perm, n)) return "col_perm is not a permutation of [0, n)";
  if (bs.block_sizes.empty()) return "no blocks";
  Index total = 0;
  for (Index s : bs.block_sizes) {
    if (s <= 0) return "block sizes must be positive";
    total += s;
  }
  if (total != n) return "block sizes sum to " + std::to_string(total) + ", expected " +
                        std::to_string(n);
  return {};
}

void require_valid_shape(const SignatureMatrix& sigma, const BlockStructure& bs) {
  auto why = shape_violation(sigma.size(), bs);
  if (!why.empty()) throw InvalidBlockStructure(why);
}

// Tarjan's algorithm on the column digraph, iterative. Returns component ids
// in emission order (sinks first).
std::vector<Index> tarjan_columns(const SignatureMatrix& sigma, const Transversal& t,
                                  Index& component_count) {
  const Index n = sigma.size();
  std::vector<Index> row_of_col(n);
  for (Index i = 0; i < n; ++i) row_of_col[t.match[i]] = i;

  std::vector<Index> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<Index> scc_stack;
  struct Frame {
    Index v;
    std::size_t next;
  };
  std::vector<Frame> call;
  Index counter = 0;
  component_count = 0;

  for (Index root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const Index v = f.v;
      auto out = sigma.row(row_of_col[v]);
      if (f.next < out.size()) {
        const Index w = out[f.next++].col;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Index w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = 0;
          comp[w] = component_count;
        } while (w != v);
        ++component_count;
      }
      call.pop_back();
      if (!call.empty()) {
        const Index parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

Index BlockStructure::block_start(Index b) const {
  if (b < 0 || b > block_count()) throw IndexOutOfRange("block " + std::to_string(b));
  return std::accumulate(block_sizes.begin(), block_sizes.begin() + b, Index{0});
}

BlockStructure BlockStructure::single_block(Index n) {
  BlockStructure bs;
  bs.row_perm.resize(n);
  bs.col_perm.resize(n);
  std::iota(bs.row_perm.begin(), bs.row_perm.end(), 0);
  std::iota(bs.col_perm.begin(), bs.col_perm.end(), 0);
  bs.block_sizes = {n};
  return bs;
}

Index count_column_sccs(const SignatureMatrix& sigma, const Transversal& t) {
  require_transversal(sigma, t);
  Index count = 0;
  tarjan_columns(sigma, t, count);
  return count;
}

BlockStructure fine_btf(const SignatureMatrix& sigma) {
  const Index n = sigma.size();
  const Transversal t = find_any_transversal(sigma);
  std::vector<Index> row_of_col(n);
  for (Index i = 0; i < n; ++i) row_of_col[t.match[i]] = i;

  Index ncomp = 0;
  const auto comp = tarjan_columns(sigma, t, ncomp);

  std::vector<std::vector<Index>> members(ncomp);
  for (Index j = 0; j < n; ++j) members[comp[j]].push_back(j);  // ascending already

  // Kahn's algorithm on the condensation; edges point from a block to the
  // blocks that must come after it.
  std::vector<std::vector<Index>> succ(ncomp);
  std::vector<Index> indegree(ncomp, 0);
  for (Index j = 0; j < n; ++j) {
    for (const Cell& e : sigma.row(row_of_col[j])) {
      if (comp[e.col] != comp[j]) {
        succ[comp[j]].push_back(comp[e.col]);
        ++indegree[comp[e.col]];
      }
    }
  }
  using Key = std::pair<Index, Index>;  // (smallest column, component)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (Index c = 0; c < ncomp; ++c) {
    if (indegree[c] == 0) ready.push({members[c].front(), c});
  }

  BlockStructure bs;
  bs.row_perm.reserve(n);
  bs.col_perm.reserve(n);
  while (!ready.empty()) {
    const Index c = ready.top().second;
    ready.pop();
    std::vector<Index> rows;
    for (Index j : members[c]) {
      bs.col_perm.push_back(j);
      rows.push_back(row_of_col[j]);
    }
    std::sort(rows.begin(), rows.end());
    bs.row_perm.insert(bs.row_perm.end(), rows.begin(), rows.end());
    bs.block_sizes.push_back(static_cast<Index>(members[c].size()));
    for (Index s : succ[c]) {
      if (--indegree[s] == 0) ready.push({members[s].front(), s});
    }
  }
  return bs;
}

std::string btf_shape_violation(const SignatureMatrix& sigma, const BlockStructure& bs) {
  auto why = shape_violation(sigma.size(), bs);
  if (!why.empty()) return why;
  const Layout l = make_layout(bs);
  for (const Cell& e : sigma.entries()) {
    const Index br = l.block_of_pos[l.pos_of_row[e.row]];
    const Index bc = l.block_of_pos[l.pos_of_col[e.col]];
    if (br > bc) {
      return "finite cell (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
             ") lies below the diagonal blocks";
    }
  }
  return {};
}

std::string btf_violation(const SignatureMatrix& sigma, const BlockStructure& bs, BtfMode mode) {
  auto why = btf_shape_violation(sigma, bs);
  if (!why.empty()) return why;
  for (Index b = 0; b < bs.block_count(); ++b) {
    const auto block = extract_block(sigma, bs, b);
    Transversal t;
    try {
      t = find_any_transversal(block);
    } catch (const StructurallySingular&) {
      return "diagonal block " + std::to_string(b) + " is structurally singular";
    }
    if (mode == BtfMode::fine && count_column_sccs(block, t) != 1) {
      return "diagonal block " + std::to_string(b) + " is reducible";
    }
  }
  return {};
}

bool validate_btf(const SignatureMatrix& sigma, const BlockStructure& bs, BtfMode mode) {
  return btf_violation(sigma, bs, mode).empty();
}

SignatureMatrix extract_block(const SignatureMatrix& sigma, const BlockStructure& bs, Index b) {
  require_valid_shape(sigma, bs);
  if (b < 0 || b >= bs.block_count()) throw IndexOutOfRange("block " + std::to_string(b));
  const Layout l = make_layout(bs);
  const Index start = l.starts[b];
  const Index end = l.starts[b + 1];
  std::vector<Cell> cells;
  for (Index k = start; k < end; ++k) {
    for (const Cell& e : sigma.row(bs.row_perm[k])) {
      const Index pc = l.pos_of_col[e.col];
      if (pc >= start && pc < end) cells.push_back({k - start, pc - start, e.sigma});
    }
  }
  return SignatureMatrix(end - start, std::move(cells));
}

SigmaSlice extract_coupling(const SignatureMatrix& sigma, const BlockStructure& bs, Index k,
                            Index i) {
  require_valid_shape(sigma, bs);
  if (k < 0 || i >= bs.block_count() || k >= i) {
    throw IndexOutOfRange("coupling (" + std::to_string(k) + ", " + std::to_string(i) + ")");
  }
  const Layout l = make_layout(bs);
  SigmaSlice s;
  s.rows = bs.block_sizes[k];
  s.cols = bs.block_sizes[i];
  for (Index r = l.starts[k]; r < l.starts[k + 1]; ++r) {
    std::vector<Cell> row;
    for (const Cell& e : sigma.row(bs.row_perm[r])) {
      const Index pc = l.pos_of_col[e.col];
      if (pc >= l.starts[i] && pc < l.starts[i + 1]) {
        row.push_back({r - l.starts[k], pc - l.starts[i], e.sigma});
      }
    }
    std::sort(row.begin(), row.end(), [](const Cell& a, const Cell& b) { return a.col < b.col; });
    s.cells.insert(s.cells.end(), row.begin(), row.end());
  }
  return s;
}

SigmaSlice extract_coupling_stack(const SignatureMatrix& sigma, const BlockStructure& bs,
                                  Index i) {
  require_valid_shape(sigma, bs);
  if (i < 0 || i >= bs.block_count()) throw IndexOutOfRange("block " + std::to_string(i));
  const Layout l = make_layout(bs);
  SigmaSlice s;
  s.rows = l.starts[i];
  s.cols = bs.block_sizes[i];
  for (Index pc = l.starts[i]; pc < l.starts[i + 1]; ++pc) {
    for (const Cell& e : sigma.column(bs.col_perm[pc])) {
      const Index pr = l.pos_of_row[e.row];
      if (pr < l.starts[i]) s.cells.push_back({pr, pc - l.starts[i], e.sigma});
    }
  }
  std::sort(s.cells.begin(), s.cells.end(), [](const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return s;
}

SignatureMatrix permute(const SignatureMatrix& sigma, const BlockStructure& bs) {
  require_valid_shape(sigma, bs);
  const Layout l = make_layout(bs);
  std::vector<Cell> cells;
  cells.reserve(sigma.nnz());
  for (const Cell& e : sigma.entries()) {
    cells.push_back({l.pos_of_row[e.row], l.pos_of_col[e.col], e.sigma});
  }
  return SignatureMatrix(sigma.size(), std::move(cells));
}

std::string write_block_structure(const BlockStructure& bs) {
  nlohmann::ordered_json j;
  j["row_perm"] = bs.row_perm;
  j["col_perm"] = bs.col_perm;
  j["block_sizes"] = bs.block_sizes;
  return j.dump();
}

BlockStructure read_block_structure(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("block structure: ") + e.what());
  }
  if (!j.is_object() || j.size() != 3 || !j.contains("row_perm") || !j.contains("col_perm") ||
      !j.contains("block_sizes")) {
    throw FormatError("block structure must have exactly row_perm, col_perm, block_sizes");
  }
  auto read_ints = [&](const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array()) throw FormatError(std::string(key) + " must be an array");
    std::vector<Index> out;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!a[k].is_number_integer()) {
        throw FormatError(std::string(key) + "[" + std::to_string(k) + "] is not an integer");
      }
      out.push_back(a[k].get<Index>());
    }
    return out;
  };
  BlockStructure bs;
  bs.row_perm = read_ints("row_perm");
  bs.col_perm = read_ints("col_perm");
  bs.block_sizes = read_ints("block_sizes");
  if (bs.row_perm.size() != bs.col_perm.size()) {
    throw FormatError("row_perm and col_perm differ in length");
  }
  return bs;
}

}  // namespace daestruct
