#include <algorithm>
#include <sstream>

#include "daestruct/analysis.hpp"
#include "json.hpp"

namespace daestruct {

namespace {

nlohmann::ordered_json stats_json(const SolveStats& s) {
  nlohmann::ordered_json j;
  j["phi_applications"] = s.phi_applications;
  j["bound"] = s.bound;
  j["converged"] = s.converged;
  j["matching_ops"] = s.matching_ops;
  j["phi_cell_ops"] = s.phi_cell_ops;
  return j;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void rstrip(std::string& line) {
  while (!line.empty() && line.back() == ' ') line.pop_back();
}

}  // namespace

std::string report_to_json(const AnalysisReport& r, const Names& names, int indent) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["equations"] = names.equations;
  j["variables"] = names.variables;
  j["method"] = r.method;
  j["offsets"] = {{"c", r.offsets.c}, {"d", r.offsets.d}};
  j["structural_index"] = r.structural_index;
  j["hvt"] = r.hvt.match;
  j["hvt_value"] = r.hvt_value;
  auto pattern = nlohmann::ordered_json::array();
  for (const auto& cell : r.jacobian_pattern) pattern.push_back({cell.row, cell.col, cell.order});
  j["jacobian_pattern"] = std::move(pattern);
  j["schedule"] = {{"equation_differentiations", r.offsets.c},
                   {"variable_highest_derivative", r.offsets.d}};
  auto stats = nlohmann::ordered_json::array();
  for (const auto& s : r.stats) stats.push_back(stats_json(s));
  j["stats"] = std::move(stats);
  if (r.block_structure) {
    j["block_structure"] = {{"row_perm", r.block_structure->row_perm},
                            {"col_perm", r.block_structure->col_perm},
                            {"block_sizes", r.block_structure->block_sizes}};
  } else {
    j["block_structure"] = nullptr;
  }
  if (r.param) {
    j["param"] = *r.param;
  } else {
    j["param"] = nullptr;
  }
  // Structural analysis cannot see an identically singular Jacobian.
  j["numeric_jacobian"] = "not checked";
  return j.dump(indent);
}

std::string report_to_text(const SignatureMatrix& sigma, const AnalysisReport& r,
                           const Names& names, bool styled) {
  const Index n = sigma.size();
  std::vector<std::vector<std::string>> cell(n, std::vector<std::string>(n));
  for (const Cell& e : sigma.entries()) {
    cell[e.row][e.col] = std::to_string(e.sigma) + (r.hvt.match[e.row] == e.col ? "*" : " ");
  }

  std::size_t label_w = 1;
  for (const auto& name : names.equations) label_w = std::max(label_w, name.size());
  std::vector<std::size_t> col_w(n);
  for (Index j = 0; j < n; ++j) {
    std::size_t w = names.variables[j].size() + 1;
    w = std::max(w, std::to_string(r.offsets.d[j]).size() + 1);
    if (r.param) w = std::max(w, std::to_string((*r.param)[j]).size() + 1);
    for (Index i = 0; i < n; ++i) w = std::max(w, cell[i][j].size());
    col_w[j] = w;
  }
  std::size_t c_w = 1;
  for (Order v : r.offsets.c) c_w = std::max(c_w, std::to_string(v).size());

  std::ostringstream out;
  auto emit = [&](std::string line) {
    rstrip(line);
    out << line << '\n';
  };
  auto margin_row = [&](const std::string& label, const std::vector<Order>& values) {
    std::string line = pad_right(label, label_w);
    for (Index j = 0; j < n; ++j) line += "  " + pad_left(std::to_string(values[j]) + " ", col_w[j]);
    emit(line);
  };

  if (r.param) margin_row("p", *r.param);
  {
    std::string line = pad_right("", label_w);
    for (Index j = 0; j < n; ++j) line += "  " + pad_left(names.variables[j] + " ", col_w[j]);
    line += " | " + pad_left("c", c_w);
    emit(line);
  }
  for (Index i = 0; i < n; ++i) {
    std::string line = pad_right(names.equations[i], label_w);
    for (Index j = 0; j < n; ++j) {
      const std::string text = pad_left(cell[i][j], col_w[j]);
      const bool starred = !cell[i][j].empty() && cell[i][j].back() == '*';
      line += "  " + (styled && starred ? "\x1b[1m" + text + "\x1b[0m" : text);
    }
    line += " | " + pad_left(std::to_string(r.offsets.c[i]), c_w);
    emit(line);
  }
  margin_row("d", r.offsets.d);
  out << '\n';

  out << "structural index: " << r.structural_index << '\n';
  out << "HVT value: " << r.hvt_value << '\n';
  out << "method: " << r.method;
  if (r.block_structure && r.method == "block") {
    out << " (blocks:";
    for (Index s : r.block_structure->block_sizes) out << ' ' << s;
    out << ')';
  }
  out << '\n';
  out << "phi applications:";
  for (const auto& s : r.stats) out << ' ' << s.phi_applications << " (bound " << s.bound << ")";
  out << '\n';
  out << "Jacobian pattern: " << r.jacobian_pattern.size() << " cells\n";
  out << "numeric Jacobian nonsingularity: not checked\n";
  return out.str();
}

}  // namespace daestruct
