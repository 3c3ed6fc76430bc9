#include <algorithm>
#include <map>

#include "daestruct/dae_text.hpp"
#include "daestruct/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace daestruct;

TEST_CASE("e1 source parses to the expected system") {
  const auto sys = parse_dae(fixtures::e1_source());
  CHECK(sys.vars == std::vector<std::string>{"x1", "x2", "x3"});
  REQUIRE(sys.equations.size() == 3);
  CHECK(sys.equations[0].name == "f1");
  CHECK(sys.equations[2].line == 4);
  CHECK(signature_of(sys) == fixtures::e1());
}

TEST_CASE("data files parse to the tables they describe") {
  const auto ex1 = parse_dae(fixtures::read_file(fixtures::data_path("ex1.dae")));
  CHECK(signature_of(ex1) == fixtures::e1());
  const auto ex2 = parse_dae(fixtures::read_file(fixtures::data_path("ex2.dae")));
  CHECK(ex2.vars == std::vector<std::string>{"x4", "x5", "x6"});
  CHECK(signature_of(ex2) == fixtures::e1());
  const auto ex3 = parse_dae(fixtures::read_file(fixtures::data_path("ex3.dae")));
  CHECK(signature_of(ex3) == fixtures::e6());
  CHECK(read_sigfile(fixtures::read_file(fixtures::data_path("ex1.sig"))) == fixtures::e1());
  CHECK(read_sigfile(fixtures::read_file(fixtures::data_path("ex6.sig"))) == fixtures::e6());
}

TEST_CASE("small systems") {
  const auto one = parse_dae("vars: x\nf = x");
  CHECK(signature_of(one) == SignatureMatrix(1, {{0, 0, 0}}));
  CHECK(signature_of(parse_dae("vars: x\nf = x + der(x,3) + x^2")) ==
        SignatureMatrix(1, {{0, 0, 3}}));
  const auto unnamed = parse_dae("vars: a, b\nder(a) - b*sin(t)\na + b^-1");
  CHECK(unnamed.equations[0].name == "f1");
  CHECK(unnamed.equations[1].name == "f2");
  CHECK(signature_of(unnamed) == SignatureMatrix(2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
}

TEST_CASE("an equation may continue over several lines") {
  const auto sys = parse_dae(
      "vars: x, y\n"
      "f = der(x) +\n"
      "    y\n"
      "g = (x\n"
      "     * y) # trailing comment\n");
  CHECK(signature_of(sys) == SignatureMatrix(2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
}

TEST_CASE("opaque calls and constants do not enter the matrix") {
  const auto sys = parse_dae("vars: x\nf = k*x + u(t, 2.5e-3) + g");
  CHECK(signature_of(sys) == SignatureMatrix(1, {{0, 0, 0}}));
}

TEST_CASE("variables inside opaque calls still count") {
  const auto sys = parse_dae("vars: x, y\nf = sin(der(x, 2)) + y\ng = x + y");
  CHECK(signature_of(sys).at(0, 0) == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_dae("vars: x\nf = der(y)"), UndeclaredVariable);
  CHECK_THROWS_AS(parse_dae("vars: x, y\nf = x"), NonSquare);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = der(der(x))"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = der(x, 0)"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = x +"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = (x"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = x)"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x, x\nf = x\ng = x"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nx = x"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = x(t)"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("f = 1"), SyntaxError);
  CHECK_THROWS_AS(parse_dae("vars: x\nf = x $ 2"), SyntaxError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_dae("vars: x\nf = x + * x");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).rfind("2:9: syntax error", 0) == 0);
  }
}

namespace {

// Random equation text together with the orders it should produce.
struct GenEq {
  std::string text;
  std::map<Index, Order> orders;
};

std::string term(oracle::Rng& rng, const std::vector<std::string>& vars, GenEq& eq) {
  const auto j = static_cast<Index>(rng.below(vars.size()));
  const int k = static_cast<int>(rng.below(4));
  auto& slot = eq.orders[j];
  slot = std::max<Order>(slot, k);
  std::string t = k == 0 ? vars[j] : k == 1 ? "der(" + vars[j] + ")"
                                            : "der(" + vars[j] + ", " + std::to_string(k) + ")";
  switch (rng.below(5)) {
    case 0: return t + "^" + std::to_string(1 + rng.below(3));
    case 1: return "sin(" + t + ")";
    case 2: return "-" + t;
    case 3: return "2.5*" + t;
    default: return t;
  }
}

std::string combine(oracle::Rng& rng, std::vector<std::string> parts) {
  while (parts.size() > 1) {
    const auto a = rng.below(parts.size() - 1);
    static const char* ops[] = {" + ", " - ", " * ", " / "};
    std::string joined = "(" + parts[a] + ops[rng.below(4)] + parts[a + 1] + ")";
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(a) + 1);
    parts[a] = joined;
  }
  return parts.front();
}

}  // namespace

TEST_CASE("signature is independent of how terms are grouped and ordered") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    oracle::Rng rng(seed);
    const Index n = static_cast<Index>(1 + rng.below(6));
    std::vector<std::string> vars;
    for (Index j = 0; j < n; ++j) vars.push_back("v" + std::to_string(j));
    std::string a = "vars: ", b = "vars: ";
    for (Index j = 0; j < n; ++j) {
      a += (j ? ", " : "") + vars[j];
    }
    b = a;
    std::vector<Cell> cells;
    for (Index i = 0; i < n; ++i) {
      GenEq eq;
      std::vector<std::string> parts;
      const auto count = 1 + rng.below(5);
      for (std::uint64_t m = 0; m < count; ++m) parts.push_back(term(rng, vars, eq));
      parts.push_back("u(t)");
      a += "\ne" + std::to_string(i) + " = " + combine(rng, parts);
      std::reverse(parts.begin(), parts.end());
      b += "\ne" + std::to_string(i) + " = " + combine(rng, parts);
      for (const auto& [j, k] : eq.orders) cells.push_back({i, j, k});
    }
    CAPTURE(a);
    CAPTURE(b);
    const SignatureMatrix expect(n, cells);
    const auto sa = parse_dae(a);
    CHECK(signature_of(sa) == expect);
    CHECK(signature_of(parse_dae(b)) == expect);
    // Printing and reparsing keeps the signature and the printed form.
    const auto printed = to_source(sa);
    const auto again = parse_dae(printed);
    CHECK(signature_of(again) == expect);
    CHECK(to_source(again) == printed);
  }
}

TEST_CASE("sigfile reading and writing") {
  const std::string text = R"({"n":3,"entries":[[0,0,2],[0,2,0],[1,1,1],[1,2,0],[2,0,0],[2,1,0]]})";
  CHECK(read_sigfile(text) == fixtures::e1());
  CHECK(write_sigfile(fixtures::e1()) == text);
  CHECK(read_sigfile(R"({"entries":[[2,1,0],[0,0,2],[1,2,0],[0,2,0],[1,1,1],[2,0,0]], "n":3})") ==
        fixtures::e1());
  CHECK(read_sigfile(R"({"n":1,"entries":[]})").nnz() == 0);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2,"entries":[[0,0,1],[0,0,2]]})"), DuplicateEntry);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2,"entries":[[0,2,1]]})"), IndexOutOfRange);
  CHECK_THROWS_AS(read_sigfile(R"({"n":0,"entries":[]})"), FormatError);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2})"), FormatError);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2,"entries":[],"x":1})"), FormatError);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2,"entries":[[0,0]]})"), FormatError);
  CHECK_THROWS_AS(read_sigfile(R"({"n":2,"entries":[[0,0,1.5]]})"), FormatError);
  CHECK_THROWS_AS(read_sigfile("[1,2]"), FormatError);
  try {
    read_sigfile("{\n  \"n\": 2,\n  \"entries\": [,]\n}");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
}

TEST_CASE("sigfile round-trips generated matrices byte for byte") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    oracle::GenSpec spec;
    spec.n = static_cast<Index>(1 + seed % 17);
    spec.sigma_min = -2;
    spec.sigma_max = 9;
    spec.seed = seed;
    const auto s = oracle::gen_sigma(spec);
    const auto text = write_sigfile(s);
    CHECK(read_sigfile(text) == s);
    CHECK(write_sigfile(read_sigfile(text)) == text);
  }
}
