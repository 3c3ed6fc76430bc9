#include "daestruct/assignment.hpp"

#include <limits>
#include <string>

namespace daestruct {

Transversal find_hvt(const SignatureMatrix& sigma, MatchingStats* stats) {
  const Index n = sigma.size();
  constexpr Order kInf = std::numeric_limits<Order>::max();

  // Minimisation of cost = -sigma. Arrays are 1-based in columns; slot 0 is
  // the virtual column that holds the row currently being inserted.
  std::vector<Order> u(n + 1, 0), v(n + 1, 0);
  std::vector<Index> row_of(n + 1, 0);  // row_of[j]: 1-based row matched to column j
  std::vector<Index> way(n + 1, 0);
  std::vector<Order> minv(n + 1);
  std::vector<char> used(n + 1);
  MatchingStats local;

  for (Index i = 1; i <= n; ++i) {
    row_of[0] = i;
    Index j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const Index i0 = row_of[j0];
      for (const Cell& e : sigma.row(i0 - 1)) {
        const Index j = e.col + 1;
        ++local.ops;
        if (used[j]) continue;
        const Order cur =
            checked_sub(checked_sub(checked_sub(0, e.sigma, "find_hvt"), u[i0], "find_hvt"),
                        v[j], "find_hvt");
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
      }
      Order delta = kInf;
      Index j1 = -1;
      for (Index j = 1; j <= n; ++j) {
        ++local.ops;
        if (!used[j] && minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0) {
        throw StructurallySingular("no transversal (row " + std::to_string(i - 1) +
                                   " cannot be matched)");
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] = checked_add(u[row_of[j]], delta, "find_hvt");
          v[j] = checked_sub(v[j], delta, "find_hvt");
        } else if (minv[j] != kInf) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const Index j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
    ++local.augmentations;
  }

  Transversal t;
  t.match.assign(n, -1);
  for (Index j = 1; j <= n; ++j) t.match[row_of[j] - 1] = j - 1;
  if (stats) {
    stats->ops += local.ops;
    stats->augmentations += local.augmentations;
  }
  return t;
}

Order transversal_value(const SignatureMatrix& sigma, const Transversal& t) {
  require_transversal(sigma, t);
  Order total = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    total = checked_add(total, *sigma.at(i, t.match[i]), "transversal_value");
  }
  return total;
}

Transversal find_any_transversal(const SignatureMatrix& sigma) {
  const Index n = sigma.size();
  std::vector<Index> row_of_col(n, -1);
  std::vector<Index> col_of_row(n, -1);
  std::vector<Index> visited(n, -1);

  struct Frame {
    Index row;
    std::size_t next;
  };
  std::vector<Frame> stack;

  // Cheap greedy pass first; the search below only handles what it leaves.
  for (Index i = 0; i < n; ++i) {
    for (const Cell& e : sigma.row(i)) {
      if (row_of_col[e.col] < 0) {
        row_of_col[e.col] = i;
        col_of_row[i] = e.col;
        break;
      }
    }
  }

  for (Index root = 0; root < n; ++root) {
    if (col_of_row[root] >= 0) continue;
    stack.assign(1, Frame{root, 0});
    bool augmented = false;
    while (!stack.empty() && !augmented) {
      Frame& top = stack.back();
      auto cells = sigma.row(top.row);
      if (top.next == cells.size()) {
        stack.pop_back();
        continue;
      }
      const Index j = cells[top.next++].col;
      if (visited[j] == root) continue;
      visited[j] = root;
      if (row_of_col[j] < 0) {
        // Flip the alternating path held on the stack.
        Index col = j;
        for (std::size_t k = stack.size(); k-- > 0;) {
          const Index r = stack[k].row;
          const Index prev = col_of_row[r];
          col_of_row[r] = col;
          row_of_col[col] = r;
          col = prev;
        }
        augmented = true;
      } else {
        stack.push_back(Frame{row_of_col[j], 0});
      }
    }
    if (!augmented) {
      throw StructurallySingular("no transversal (row " + std::to_string(root) +
                                 " cannot be matched)");
    }
  }
  return Transversal{std::move(col_of_row)};
}

}  // namespace daestruct
