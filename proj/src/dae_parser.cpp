#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include "daestruct/dae_text.hpp"

namespace daestruct {

namespace {

enum class Tok { ident, number, op, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  bool integral = false;
  int line = 1;
  int col = 1;
};

// Newlines are only significant at parenthesis depth zero and only when the
// previous token could end an expression.
std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t k = 0;

  auto continues = [&]() {
    if (out.empty() || out.back().kind == Tok::newline) return true;
    if (out.back().kind != Tok::op) return false;
    const auto& t = out.back().text;
    return t != ")";
  };
  auto advance = [&](std::size_t count) {
    for (std::size_t m = 0; m < count; ++m, ++k) {
      if (src[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (k < src.size()) {
    const char ch = src[k];
    if (ch == '#') {
      while (k < src.size() && src[k] != '\n') advance(1);
      continue;
    }
    if (ch == '\n') {
      if (depth == 0 && !continues()) out.push_back({Tok::newline, "\n", false, line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t e = k;
      while (e < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[e])) || src[e] == '_')) {
        ++e;
      }
      t.kind = Tok::ident;
      t.text = std::string(src.substr(k, e - k));
      advance(e - k);
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t e = k;
      bool integral = true;
      while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
      if (e < src.size() && src[e] == '.') {
        integral = false;
        ++e;
        while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
      }
      if (e < src.size() && (src[e] == 'e' || src[e] == 'E')) {
        std::size_t m = e + 1;
        if (m < src.size() && (src[m] == '+' || src[m] == '-')) ++m;
        if (m < src.size() && std::isdigit(static_cast<unsigned char>(src[m]))) {
          integral = false;
          e = m;
          while (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) ++e;
        }
      }
      t.kind = Tok::number;
      t.text = std::string(src.substr(k, e - k));
      t.integral = integral;
      if (t.text == ".") throw SyntaxError(line, col, "stray '.'");
      advance(e - k);
    } else if (std::string_view("+-*/^(),=:").find(ch) != std::string_view::npos) {
      t.kind = Tok::op;
      t.text = std::string(1, ch);
      if (ch == '(') ++depth;
      if (ch == ')') {
        if (depth == 0) throw SyntaxError(line, col, "unbalanced ')'");
        --depth;
      }
      advance(1);
    } else {
      throw SyntaxError(line, col, std::string("unexpected character '") + ch + "'");
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", false, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  DaeSystem system() {
    skip_newlines();
    header();
    std::set<std::string> names;
    for (;;) {
      skip_newlines();
      if (peek().kind == Tok::end) break;
      Equation eq = equation();
      if (eq.name.empty()) eq.name = "f" + std::to_string(sys_.equations.size() + 1);
      if (!names.insert(eq.name).second) {
        throw SyntaxError(eq.line, 1, "duplicate equation name '" + eq.name + "'");
      }
      sys_.equations.push_back(std::move(eq));
      if (peek().kind != Tok::end && peek().kind != Tok::newline) {
        fail(peek(), "expected end of equation");
      }
    }
    if (sys_.equations.empty()) fail(peek(), "no equations");
    if (sys_.equations.size() != sys_.vars.size()) {
      throw NonSquare(sys_.equations.size(), sys_.vars.size());
    }
    return std::move(sys_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_op(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::op && peek(ahead).text == s;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    const std::string got = t.kind == Tok::end       ? "end of input"
                            : t.kind == Tok::newline ? "end of line"
                                                     : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, msg + ", got " + got);
  }
  void expect(const char* s) {
    if (!is_op(s)) fail(peek(), std::string("expected '") + s + "'");
    take();
  }
  void skip_newlines() {
    while (peek().kind == Tok::newline) take();
  }

  void header() {
    if (!(peek().kind == Tok::ident && peek().text == "vars" && is_op(":", 1))) {
      fail(peek(), "expected 'vars:' header");
    }
    take();
    take();
    for (;;) {
      const Token t = take();
      if (t.kind != Tok::ident) fail(t, "expected variable name");
      if (t.text == "der" || t.text == "vars") fail(t, "reserved word used as variable");
      if (var_index_.count(t.text)) {
        throw SyntaxError(t.line, t.col, "variable '" + t.text + "' declared twice");
      }
      var_index_[t.text] = static_cast<Index>(sys_.vars.size());
      sys_.vars.push_back(t.text);
      if (!is_op(",")) break;
      take();
    }
  }

  Equation equation() {
    Equation eq;
    eq.line = peek().line;
    if (peek().kind == Tok::ident && is_op("=", 1)) {
      const Token name = take();
      if (var_index_.count(name.text)) {
        throw SyntaxError(name.line, name.col,
                          "equation name '" + name.text + "' is a declared variable");
      }
      eq.name = name.text;
      take();
    }
    eq.expr = expr();
    return eq;
  }

  Expr expr() {
    Expr first = term();
    if (!is_op("+") && !is_op("-")) return first;
    Expr sum;
    sum.kind = Expr::Kind::sum;
    sum.args.push_back(std::move(first));
    while (is_op("+") || is_op("-")) {
      const bool minus = take().text == "-";
      Expr rhs = term();
      if (minus) {
        Expr neg;
        neg.kind = Expr::Kind::negate;
        neg.args.push_back(std::move(rhs));
        sum.args.push_back(std::move(neg));
      } else {
        sum.args.push_back(std::move(rhs));
      }
    }
    return sum;
  }

  Expr term() {
    Expr first = factor();
    if (!is_op("*") && !is_op("/")) return first;
    Expr prod;
    prod.kind = Expr::Kind::product;
    prod.args.push_back(std::move(first));
    while (is_op("*") || is_op("/")) {
      const bool divide = take().text == "/";
      Expr rhs = factor();
      if (divide) {
        Expr inv;
        inv.kind = Expr::Kind::power;
        inv.exponent = -1;
        inv.args.push_back(std::move(rhs));
        prod.args.push_back(std::move(inv));
      } else {
        prod.args.push_back(std::move(rhs));
      }
    }
    return prod;
  }

  Expr factor() {
    bool negate = false;
    if (is_op("-")) {
      take();
      negate = true;
    }
    Expr base = atom();
    if (is_op("^")) {
      take();
      bool neg_exp = false;
      if (is_op("-")) {
        take();
        neg_exp = true;
      }
      const Token t = take();
      const auto e = integer_value(t, "expected integer exponent");
      Expr pw;
      pw.kind = Expr::Kind::power;
      pw.exponent = neg_exp ? -e : e;
      pw.args.push_back(std::move(base));
      base = std::move(pw);
    }
    if (!negate) return base;
    Expr neg;
    neg.kind = Expr::Kind::negate;
    neg.args.push_back(std::move(base));
    return neg;
  }

  int integer_value(const Token& t, const char* msg) const {
    if (t.kind != Tok::number || !t.integral) fail(t, msg);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw SyntaxError(t.line, t.col, "integer '" + t.text + "' out of range");
    }
    return v;
  }

  Expr atom() {
    const Token t = take();
    Expr e;
    if (t.kind == Tok::number) {
      e.kind = Expr::Kind::number;
      e.text = t.text;
      return e;
    }
    if (t.kind == Tok::op && t.text == "(") {
      e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::ident) fail(t, "expected an operand");

    if (t.text == "der") return derivative();
    auto it = var_index_.find(t.text);
    if (is_op("(")) {
      if (it != var_index_.end()) {
        throw SyntaxError(t.line, t.col, "variable '" + t.text + "' used as a function");
      }
      take();
      e.kind = Expr::Kind::call;
      e.text = t.text;
      if (!is_op(")")) {
        e.args.push_back(expr());
        while (is_op(",")) {
          take();
          e.args.push_back(expr());
        }
      }
      expect(")");
      return e;
    }
    if (it != var_index_.end()) {
      e.kind = Expr::Kind::var;
      e.var = it->second;
    } else {
      e.kind = Expr::Kind::constant;
      e.text = t.text;
    }
    return e;
  }

  Expr derivative() {
    expect("(");
    const Token v = take();
    if (v.kind == Tok::ident && v.text == "der") {
      throw SyntaxError(v.line, v.col, "nested der() is not supported; write der(x, k)");
    }
    if (v.kind != Tok::ident) fail(v, "der() expects a variable name");
    auto it = var_index_.find(v.text);
    if (it == var_index_.end()) throw UndeclaredVariable(v.text);
    int order = 1;
    if (is_op(",")) {
      take();
      const Token k = take();
      order = integer_value(k, "expected derivative order");
      if (order < 1) throw SyntaxError(k.line, k.col, "derivative order must be at least 1");
    }
    expect(")");
    Expr e;
    e.kind = Expr::Kind::der;
    e.var = it->second;
    e.order = order;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  DaeSystem sys_;
  std::map<std::string, Index> var_index_;
};

void collect_orders(const Expr& e, std::vector<std::optional<Order>>& orders) {
  auto bump = [&](Index v, Order k) {
    if (!orders[v] || *orders[v] < k) orders[v] = k;
  };
  switch (e.kind) {
    case Expr::Kind::var: bump(e.var, 0); break;
    case Expr::Kind::der: bump(e.var, e.order); break;
    default:
      for (const Expr& a : e.args) collect_orders(a, orders);
  }
}

void print(const Expr& e, const std::vector<std::string>& vars, std::string& out, int prec) {
  // prec: 0 sum context, 1 product context, 2 operand of ^ or unary minus
  switch (e.kind) {
    case Expr::Kind::number: out += e.text; return;
    case Expr::Kind::constant: out += e.text; return;
    case Expr::Kind::var: out += vars[e.var]; return;
    case Expr::Kind::der:
      out += "der(" + vars[e.var];
      if (e.order != 1) out += ", " + std::to_string(e.order);
      out += ")";
      return;
    case Expr::Kind::call:
      out += e.text + "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k) out += ", ";
        print(e.args[k], vars, out, 0);
      }
      out += ")";
      return;
    case Expr::Kind::sum: {
      if (prec > 0) out += "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        const Expr& a = e.args[k];
        if (k && a.kind == Expr::Kind::negate) {
          out += " - ";
          print(a.args[0], vars, out, 1);
        } else {
          if (k) out += " + ";
          print(a, vars, out, 1);
        }
      }
      if (prec > 0) out += ")";
      return;
    }
    case Expr::Kind::product: {
      if (prec > 1) out += "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        const Expr& a = e.args[k];
        if (k && a.kind == Expr::Kind::power && a.exponent == -1) {
          out += " / ";
          print(a.args[0], vars, out, 2);
        } else {
          if (k) out += " * ";
          print(a, vars, out, 2);
        }
      }
      if (prec > 1) out += ")";
      return;
    }
    case Expr::Kind::power:
      if (prec > 1) out += "(";
      print(e.args[0], vars, out, 3);
      out += "^" + std::to_string(e.exponent);
      if (prec > 1) out += ")";
      return;
    case Expr::Kind::negate:
      if (prec > 0) out += "(";
      out += "-";
      print(e.args[0], vars, out, 3);
      if (prec > 0) out += ")";
      return;
  }
}

}  // namespace

DaeSystem parse_dae(std::string_view text) { return Parser(lex(text)).system(); }

SignatureMatrix signature_of(const DaeSystem& sys) {
  const auto n = static_cast<Index>(sys.vars.size());
  if (sys.equations.size() != sys.vars.size()) {
    throw NonSquare(sys.equations.size(), sys.vars.size());
  }
  std::vector<Cell> cells;
  for (Index i = 0; i < n; ++i) {
    std::vector<std::optional<Order>> orders(n);
    collect_orders(sys.equations[i].expr, orders);
    for (Index j = 0; j < n; ++j) {
      if (orders[j]) cells.push_back({i, j, *orders[j]});
    }
  }
  return SignatureMatrix(n, std::move(cells));
}

std::string to_source(const Expr& e, const std::vector<std::string>& vars) {
  std::string out;
  print(e, vars, out, 0);
  return out;
}

std::string to_source(const DaeSystem& sys) {
  std::string out = "vars: ";
  for (std::size_t k = 0; k < sys.vars.size(); ++k) {
    if (k) out += ", ";
    out += sys.vars[k];
  }
  out += "\n";
  for (const auto& eq : sys.equations) {
    out += eq.name + " = " + to_source(eq.expr, sys.vars) + "\n";
  }
  return out;
}

}  // namespace daestruct
