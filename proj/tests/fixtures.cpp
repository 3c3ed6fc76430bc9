#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::optional<Order>>> dense(const SignatureMatrix& sigma) {
  const auto n = static_cast<std::size_t>(sigma.size());
  std::vector<std::vector<std::optional<Order>>> out(n, std::vector<std::optional<Order>>(n));
  for (const Cell& e : sigma.entries()) out[e.row][e.col] = e.sigma;
  return out;
}

}  // namespace fixtures
