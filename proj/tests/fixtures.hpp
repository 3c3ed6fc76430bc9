#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daestruct/sigma.hpp"

#ifndef DAESTRUCT_DATA_DIR
#define DAESTRUCT_DATA_DIR "data"
#endif

namespace fixtures {

using daestruct::Cell;
using daestruct::Order;
using daestruct::SignatureMatrix;

// Three equations, pendulum-like pattern: rows f1..f3, columns x1..x3.
inline SignatureMatrix e1() {
  return SignatureMatrix(3, {{0, 0, 2}, {0, 2, 0}, {1, 1, 1}, {1, 2, 0}, {2, 0, 0}, {2, 1, 0}});
}

// Two copies of e1 on the diagonal coupled by a single cell in f3.
inline SignatureMatrix e6() {
  return SignatureMatrix(6, {{0, 0, 2},
                             {0, 2, 0},
                             {1, 1, 1},
                             {1, 2, 0},
                             {2, 0, 0},
                             {2, 1, 0},
                             {2, 5, 1},
                             {3, 3, 2},
                             {3, 5, 0},
                             {4, 4, 1},
                             {4, 5, 0},
                             {5, 3, 0},
                             {5, 4, 0}});
}

inline const char* e1_source() {
  return "vars: x1, x2, x3\n"
         "f1 = der(x1,2) + x3 + u1(t)\n"
         "f2 = der(x2) + x3 + u2(t)\n"
         "f3 = x1^2 + x2^2 + u3(t)";
}

std::string read_file(const std::string& path);

inline std::string data_path(const std::string& name) {
  return std::string(DAESTRUCT_DATA_DIR) + "/" + name;
}

// Row-major dense table, absent cells as std::nullopt, handy in assertions.
std::vector<std::vector<std::optional<Order>>> dense(const SignatureMatrix& sigma);

}  // namespace fixtures
