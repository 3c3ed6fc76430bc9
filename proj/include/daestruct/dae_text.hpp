#pragma once

// A small DAE description language and the signature-matrix JSON format.
//
//   # pendulum-like example
//   vars: x1, x2, x3
//   f1 = der(x1, 2) + x3 + u1(t)
//   f2 = der(x2) + x3 + u2(t)
//   f3 = x1^2 + x2^2 + u3(t)
//
// One equation per line. A line that ends in an operator, a comma or inside
// parentheses continues on the next line. Identifiers not listed after
// `vars:` are opaque known functions or constants and never enter the
// signature matrix.

#include <string>
#include <string_view>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

struct Expr {
  enum class Kind {
    sum,       // args added; subtraction is a negated operand
    product,   // args multiplied; division is a power with exponent -1
    power,     // args[0] ^ exponent
    negate,    // -args[0]
    number,    // literal, kept as written in `text`
    var,       // declared variable `var`
    der,       // der(var, order), order >= 1
    call,      // opaque function `text`(args...)
    constant,  // opaque identifier `text`
  };

  Kind kind = Kind::number;
  std::vector<Expr> args;
  std::string text;
  Index var = -1;
  int order = 0;
  int exponent = 1;
};

struct Equation {
  std::string name;
  Expr expr;
  int line = 0;
};

struct DaeSystem {
  std::vector<std::string> vars;
  std::vector<Equation> equations;
};

/// Throws SyntaxError, UndeclaredVariable, NonSquare.
DaeSystem parse_dae(std::string_view text);

/// sigma_ij = highest der order of x_j in equation i (a bare occurrence is 0).
SignatureMatrix signature_of(const DaeSystem& sys);

/// Prints the system back in the input language.
std::string to_source(const DaeSystem& sys);
std::string to_source(const Expr& e, const std::vector<std::string>& vars);

/// {"n": int, "entries": [[row, col, sigma], ...]}, 0-based indices.
/// Throws FormatError, DuplicateEntry, IndexOutOfRange.
SignatureMatrix read_sigfile(std::string_view text);

/// Canonical form: compact JSON, entries in row-major order.
std::string write_sigfile(const SignatureMatrix& sigma);

}  // namespace daestruct
