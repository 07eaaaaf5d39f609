#include "grid.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>

namespace dricci {

void SampleGrid::validate() const {
  if (u.size() < 2) fail(ErrorCode::InvalidArgument, "grid needs at least 2 samples");
  if (n_min > 0 || n_max() < 0)
    fail(ErrorCode::InvalidArgument, "grid must contain index n = 0");
  const bool inc = u[1] > u[0];
  for (size_t i = 0; i + 1 < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(u[i + 1]))
      fail(ErrorCode::InvalidArgument, "non-finite grid value");
    if (inc ? (u[i + 1] <= u[i]) : (u[i + 1] >= u[i]))
      fail(ErrorCode::InvalidArgument, "grid is not strictly monotonic");
  }
}

SampleGrid linspace_grid(double a, double b, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "linspace needs at least 1 step");
  SampleGrid g;
  g.n_min = 0;
  g.u.resize(m + 1);
  for (int i = 0; i <= m; ++i) g.u[i] = a + (b - a) * i / m;
  g.validate();
  return g;
}

namespace {

// Recursive-descent evaluator for the expression form.
struct ExprParser {
  const std::string& s;
  size_t pos = 0;
  double n;

  ExprParser(const std::string& text, double nval) : s(text), n(nval) {}

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos != s.size()) err("unexpected trailing input");
    return v;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) {
        const double d = unary();
        v /= d;
      } else return v;
    }
  }

  // '^' binds tighter than unary minus (-n^2 is -(n^2)) but its exponent may
  // carry a sign of its own (2^-3).
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  double power() {
    const double base = primary();
    if (eat('^')) return std::pow(base, unary());  // right associative
    return base;
  }

  double primary() {
    skip_ws();
    if (pos >= s.size()) err("unexpected end of expression");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      const double v = expr();
      if (!eat(')')) err("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(s.c_str() + pos, &end);
      if (end == s.c_str() + pos) err("bad number");
      pos = end - s.c_str();
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      const std::string name = s.substr(start, pos - start);
      if (name == "n") return n;
      if (name == "pi") return M_PI;
      static const std::map<std::string, double (*)(double)> funcs = {
          {"sin", std::sin},     {"cos", std::cos},     {"tan", std::tan},
          {"asin", std::asin},   {"acos", std::acos},   {"atan", std::atan},
          {"sinh", std::sinh},   {"cosh", std::cosh},   {"tanh", std::tanh},
          {"asinh", std::asinh}, {"acosh", std::acosh}, {"atanh", std::atanh},
          {"exp", std::exp},     {"log", std::log},     {"log10", std::log10},
          {"sqrt", std::sqrt},   {"abs", std::fabs},
          {"floor", std::floor}, {"ceil", std::ceil},
      };
      auto it = funcs.find(name);
      if (it == funcs.end()) err("unknown identifier '" + name + "'");
      if (!eat('(')) err("expected '(' after '" + name + "'");
      const double arg = expr();
      if (!eat(')')) err("missing ')'");
      return it->second(arg);
    }
    err(std::string("unexpected character '") + c + "'");
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    fail(ErrorCode::ParseError, "expected integer, got \"" + s + "\"");
  return v;
}

}  // namespace

double eval_grid_expr(const std::string& expr, double n) {
  ExprParser p(expr, n);
  return p.parse();
}

SampleGrid parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail(ErrorCode::ParseError, "empty grid specification");

  SampleGrid g;
  if (t.front() == '[') {
    if (t.back() != ']') fail(ErrorCode::ParseError, "missing ']' in grid list");
    std::string body = t.substr(1, t.size() - 2);
    size_t start = 0;
    while (start <= body.size()) {
      size_t comma = body.find(',', start);
      std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!item.empty()) g.u.push_back(eval_grid_expr(item, 0));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    g.n_min = 0;
    g.validate();
    return g;
  }

  if (t.rfind("linspace", 0) == 0) {
    size_t open = t.find('(');
    size_t close = t.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      fail(ErrorCode::ParseError, "malformed linspace(...)");
    std::string body = t.substr(open + 1, close - open - 1);
    std::vector<std::string> args;
    size_t start = 0;
    for (;;) {
      size_t comma = body.find(',', start);
      args.push_back(trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (args.size() != 3) fail(ErrorCode::ParseError, "linspace needs 3 arguments");
    return linspace_grid(eval_grid_expr(args[0], 0), eval_grid_expr(args[1], 0),
                         static_cast<int>(parse_int(args[2])));
  }

  // expression form: "expr : n = lo .. hi"
  size_t colon = t.rfind(':');
  if (colon == std::string::npos)
    fail(ErrorCode::ParseError, "grid must be a [list], linspace(a,b,m), or \"expr : n = lo .. hi\"");
  const std::string expr = trim(t.substr(0, colon));
  std::string range = trim(t.substr(colon + 1));
  if (range.rfind("n", 0) != 0) fail(ErrorCode::ParseError, "range must look like n = lo .. hi");
  range = trim(range.substr(1));
  if (range.empty() || range.front() != '=') fail(ErrorCode::ParseError, "range must look like n = lo .. hi");
  range = trim(range.substr(1));
  size_t dots = range.find("..");
  if (dots == std::string::npos) fail(ErrorCode::ParseError, "range must look like n = lo .. hi");
  const long lo = parse_int(trim(range.substr(0, dots)));
  const long hi = parse_int(trim(range.substr(dots + 2)));
  if (lo > hi) fail(ErrorCode::ParseError, "range lower bound exceeds upper bound");
  if (lo > 0 || hi < 0) fail(ErrorCode::InvalidArgument, "grid range must contain n = 0");

  g.n_min = static_cast<int>(lo);
  g.u.reserve(hi - lo + 1);
  for (long n = lo; n <= hi; ++n) g.u.push_back(eval_grid_expr(expr, static_cast<double>(n)));
  g.validate();
  return g;
}

}  // namespace dricci
