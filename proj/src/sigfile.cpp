#include <limits>

#include "daestruct/dae_text.hpp"
#include "json.hpp"

namespace daestruct {

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::int64_t as_int64(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw FormatError(where + ": integer out of range");
  }
  return v.get<std::int64_t>();
}

}  // namespace

SignatureMatrix read_sigfile(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": invalid JSON");
  }
  if (!doc.is_object()) throw FormatError("top level must be an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "n" && item.key() != "entries") {
      throw FormatError("unexpected field \"" + item.key() + "\"");
    }
  }
  if (!doc.contains("n")) throw FormatError("missing field \"n\"");
  if (!doc.contains("entries")) throw FormatError("missing field \"entries\"");

  const std::int64_t n = as_int64(doc["n"], "n");
  if (n < 1 || n > std::numeric_limits<Index>::max()) throw FormatError("n must be positive");
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw FormatError("entries: expected an array");

  std::vector<Cell> cells;
  cells.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 3) throw FormatError(where + ": expected [row, col, sigma]");
    const auto row = as_int64(e[0], where + "[0]");
    const auto col = as_int64(e[1], where + "[1]");
    const auto sig = as_int64(e[2], where + "[2]");
    if (row < 0 || row >= n || col < 0 || col >= n) {
      throw IndexOutOfRange(where + " = (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") with n = " + std::to_string(n));
    }
    cells.push_back({static_cast<Index>(row), static_cast<Index>(col), sig});
  }
  return SignatureMatrix(static_cast<Index>(n), std::move(cells));
}

std::string write_sigfile(const SignatureMatrix& sigma) {
  nlohmann::ordered_json doc;
  doc["n"] = sigma.size();
  auto entries = nlohmann::ordered_json::array();
  for (const Cell& e : sigma.entries()) entries.push_back({e.row, e.col, e.sigma});
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace daestruct
