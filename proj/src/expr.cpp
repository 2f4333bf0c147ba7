#include "hrange/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <system_error>

namespace hrange {

struct EntireExpr::Node {
  Kind kind;
  cplx value{};
  std::string symbol;
  unsigned exponent = 0;
  std::optional<EntireExpr> a;
  std::optional<EntireExpr> b;
};

EntireExpr::EntireExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

EntireExpr EntireExpr::constant(cplx value, std::string symbol) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw AnalysisError("non-finite constant in expression");
  return EntireExpr(std::make_shared<const Node>(
      Node{Kind::constant, value, std::move(symbol), 0, std::nullopt, std::nullopt}));
}

EntireExpr EntireExpr::var() {
  return EntireExpr(
      std::make_shared<const Node>(Node{Kind::var, {}, {}, 0, std::nullopt, std::nullopt}));
}

EntireExpr EntireExpr::add(EntireExpr lhs, EntireExpr rhs) {
  return EntireExpr(std::make_shared<const Node>(
      Node{Kind::add, {}, {}, 0, std::move(lhs), std::move(rhs)}));
}

EntireExpr EntireExpr::mul(EntireExpr lhs, EntireExpr rhs) {
  return EntireExpr(std::make_shared<const Node>(
      Node{Kind::mul, {}, {}, 0, std::move(lhs), std::move(rhs)}));
}

EntireExpr EntireExpr::neg(EntireExpr arg) {
  return EntireExpr(
      std::make_shared<const Node>(Node{Kind::neg, {}, {}, 0, std::move(arg), std::nullopt}));
}

EntireExpr EntireExpr::pow(EntireExpr base, unsigned exponent) {
  return EntireExpr(std::make_shared<const Node>(
      Node{Kind::pow, {}, {}, exponent, std::move(base), std::nullopt}));
}

EntireExpr EntireExpr::exp(EntireExpr arg) {
  return EntireExpr(
      std::make_shared<const Node>(Node{Kind::exp, {}, {}, 0, std::move(arg), std::nullopt}));
}

EntireExpr::Kind EntireExpr::kind() const { return node_->kind; }
cplx EntireExpr::value() const { return node_->value; }
const std::string& EntireExpr::symbol() const { return node_->symbol; }
unsigned EntireExpr::exponent() const { return node_->exponent; }
const EntireExpr& EntireExpr::lhs() const { return *node_->a; }
const EntireExpr& EntireExpr::rhs() const { return *node_->b; }

namespace {

cplx ipow(cplx base, unsigned k) {
  cplx result{1.0, 0.0};
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

}  // namespace

cplx EntireExpr::operator()(cplx z) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::var: return z;
    case Kind::add: return (*n.a)(z) + (*n.b)(z);
    case Kind::mul: return (*n.a)(z) * (*n.b)(z);
    case Kind::neg: return -(*n.a)(z);
    case Kind::pow: return ipow((*n.a)(z), n.exponent);
    case Kind::exp: return std::exp((*n.a)(z));
  }
  return {};
}

bool operator==(const EntireExpr& x, const EntireExpr& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case EntireExpr::Kind::constant: return a.value == b.value;
    case EntireExpr::Kind::var: return true;
    case EntireExpr::Kind::add:
    case EntireExpr::Kind::mul: return *a.a == *b.a && *a.b == *b.b;
    case EntireExpr::Kind::pow: return a.exponent == b.exponent && *a.a == *b.a;
    case EntireExpr::Kind::neg:
    case EntireExpr::Kind::exp: return *a.a == *b.a;
  }
  return false;
}

EntireExpr operator+(const EntireExpr& a, const EntireExpr& b) { return EntireExpr::add(a, b); }
EntireExpr operator-(const EntireExpr& a, const EntireExpr& b) {
  return EntireExpr::add(a, EntireExpr::neg(b));
}
EntireExpr operator*(const EntireExpr& a, const EntireExpr& b) { return EntireExpr::mul(a, b); }
EntireExpr operator-(const EntireExpr& a) { return EntireExpr::neg(a); }

// ---------------------------------------------------------------------------
// Parser
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := 'z' | number | 'i' | 'pi' | 'e' | 'exp' '(' expr ')'
//           | '(' expr ')' | '-' base
//
// number accepts decimals, scientific notation and rational literals "p/q".

namespace {

constexpr unsigned kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  EntireExpr parse_all() {
    EntireExpr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

  std::size_t position() const { return pos_; }

  EntireExpr expr() {
    EntireExpr e = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        e = EntireExpr::add(e, term());
      } else if (accept('-')) {
        e = EntireExpr::add(e, EntireExpr::neg(term()));
      } else {
        return e;
      }
    }
  }

 private:
  EntireExpr term() {
    EntireExpr e = factor();
    for (;;) {
      skip_ws();
      if (!accept('*')) return e;
      e = EntireExpr::mul(e, factor());
    }
  }

  EntireExpr factor() {
    EntireExpr b = base();
    skip_ws();
    if (!accept('^')) return b;
    skip_ws();
    const std::size_t at = pos_;
    if (at < src_.size() && src_[at] == '-') fail("negative exponent", at);
    if (at >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[at])))
      fail("expected non-negative integer exponent", at);
    std::size_t end = at;
    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    if (end < src_.size() && (src_[end] == '.' || src_[end] == '/' || src_[end] == 'e' ||
                              src_[end] == 'E'))
      fail("fractional exponent", at);
    unsigned k = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + end, k);
    if (ec != std::errc() || k > kMaxExponent) fail("exponent too large", at);
    pos_ = end;
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') fail("chained exponent needs parentheses");
    return EntireExpr::pow(b, k);
  }

  EntireExpr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return EntireExpr::neg(base());
    }
    if (c == '(') {
      ++pos_;
      EntireExpr e = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view id = src_.substr(at, pos_ - at);
      if (id == "z") return EntireExpr::var();
      if (id == "i") return EntireExpr::constant({0.0, 1.0}, "i");
      if (id == "pi") return EntireExpr::constant(std::numbers::pi, "pi");
      if (id == "e") return EntireExpr::constant(std::numbers::e, "e");
      if (id == "exp") {
        skip_ws();
        if (!accept('(')) fail("expected '(' after exp");
        EntireExpr arg = expr();
        skip_ws();
        if (!accept(')')) fail("expected ')'");
        return EntireExpr::exp(arg);
      }
      fail("unknown identifier '" + std::string(id) + "'", at);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  double scan_decimal() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      const std::size_t s = end;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      return end > s;
    };
    bool any = digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      any = digits() || any;
    }
    if (!any) fail("malformed number", at);
    // exponent only when followed by [+-]?digit, so "2e" stays an error
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t probe = end + 1;
      if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
      if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
        end = probe;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + end, value);
    if (ec != std::errc() || ptr != src_.data() + end) fail("malformed number", at);
    pos_ = end;
    return value;
  }

  EntireExpr number() {
    double value = scan_decimal();
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      const std::size_t at = pos_;
      ++pos_;
      const double den = scan_decimal();
      if (den == 0.0) fail("zero denominator in rational literal", at);
      value /= den;
    }
    if (!std::isfinite(value)) fail("number out of range");
    return EntireExpr::constant(value);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Printing levels mirror the grammar: 0 expr, 1 term, 2 factor, 3 base.
int level_of(const EntireExpr& e) {
  switch (e.kind()) {
    case EntireExpr::Kind::add: return 0;
    case EntireExpr::Kind::mul: return 1;
    case EntireExpr::Kind::pow: return 2;
    case EntireExpr::Kind::constant: {
      const cplx c = e.value();
      if (!e.symbol().empty()) return 3;
      if (c.imag() == 0.0 && !std::signbit(c.real())) return 3;
      return 0;  // printed as a parenthesised sum
    }
    default: return 3;
  }
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

void print(const EntireExpr& e, int min_level, std::string& out);

void print_constant(const EntireExpr& e, std::string& out) {
  if (!e.symbol().empty()) {
    out += e.symbol();
    return;
  }
  const cplx c = e.value();
  if (c.imag() == 0.0) {
    if (std::signbit(c.real()))
      out += "-" + format_real(-c.real());
    else
      out += format_real(c.real());
    return;
  }
  if (c.real() != 0.0) {
    out += format_real(c.real());
    out += std::signbit(c.imag()) ? " - " : " + ";
  } else if (std::signbit(c.imag())) {
    out += "-";
  }
  out += format_real(std::abs(c.imag()));
  out += "*i";
}

void print(const EntireExpr& e, int min_level, std::string& out) {
  const bool parens = level_of(e) < min_level;
  if (parens) out += '(';
  switch (e.kind()) {
    case EntireExpr::Kind::constant: print_constant(e, out); break;
    case EntireExpr::Kind::var: out += 'z'; break;
    case EntireExpr::Kind::add:
      print(e.lhs(), 0, out);
      if (e.rhs().kind() == EntireExpr::Kind::neg) {
        out += " - ";
        print(e.rhs().lhs(), 1, out);
      } else {
        out += " + ";
        print(e.rhs(), 1, out);
      }
      break;
    case EntireExpr::Kind::mul:
      print(e.lhs(), 1, out);
      out += '*';
      print(e.rhs(), 2, out);
      break;
    case EntireExpr::Kind::neg:
      out += '-';
      print(e.lhs(), 3, out);
      break;
    case EntireExpr::Kind::pow:
      print(e.lhs(), 3, out);
      out += '^';
      out += std::to_string(e.exponent());
      break;
    case EntireExpr::Kind::exp:
      out += "exp(";
      print(e.lhs(), 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

// Folding constructors used by derivative().
bool is_const(const EntireExpr& e, cplx c) {
  return e.kind() == EntireExpr::Kind::constant && e.value() == c;
}

EntireExpr fadd(const EntireExpr& a, const EntireExpr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a.kind() == EntireExpr::Kind::constant && b.kind() == EntireExpr::Kind::constant)
    return EntireExpr::constant(a.value() + b.value());
  return EntireExpr::add(a, b);
}

EntireExpr fmul(const EntireExpr& a, const EntireExpr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return EntireExpr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.kind() == EntireExpr::Kind::constant && b.kind() == EntireExpr::Kind::constant)
    return EntireExpr::constant(a.value() * b.value());
  return EntireExpr::mul(a, b);
}

EntireExpr fneg(const EntireExpr& a) {
  if (a.kind() == EntireExpr::Kind::constant) return EntireExpr::constant(-a.value());
  if (a.kind() == EntireExpr::Kind::neg) return a.lhs();
  return EntireExpr::neg(a);
}

using Coeffs = std::vector<cplx>;

Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
  Coeffs r(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void trim(Coeffs& c) {
  while (c.size() > 1 && c.back() == cplx{}) c.pop_back();
}

}  // namespace

EntireExpr parse_expr(std::string_view src) {
  Parser p(src);
  return p.parse_all();
}

std::string to_string(const EntireExpr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

EntireExpr derivative(const EntireExpr& e) {
  using K = EntireExpr::Kind;
  switch (e.kind()) {
    case K::constant: return EntireExpr::constant(0.0);
    case K::var: return EntireExpr::constant(1.0);
    case K::add: return fadd(derivative(e.lhs()), derivative(e.rhs()));
    case K::mul:
      return fadd(fmul(derivative(e.lhs()), e.rhs()), fmul(e.lhs(), derivative(e.rhs())));
    case K::neg: return fneg(derivative(e.lhs()));
    case K::pow: {
      const unsigned k = e.exponent();
      if (k == 0) return EntireExpr::constant(0.0);
      const EntireExpr inner = derivative(e.lhs());
      if (k == 1) return inner;
      const EntireExpr lowered = k == 2 ? e.lhs() : EntireExpr::pow(e.lhs(), k - 1);
      return fmul(fmul(EntireExpr::constant(static_cast<double>(k)), lowered), inner);
    }
    case K::exp: return fmul(e, derivative(e.lhs()));
  }
  return EntireExpr::constant(0.0);
}

EntireExpr substitute(const EntireExpr& e, const EntireExpr& replacement) {
  using K = EntireExpr::Kind;
  switch (e.kind()) {
    case K::constant: return e;
    case K::var: return replacement;
    case K::add: return EntireExpr::add(substitute(e.lhs(), replacement), substitute(e.rhs(), replacement));
    case K::mul: return EntireExpr::mul(substitute(e.lhs(), replacement), substitute(e.rhs(), replacement));
    case K::neg: return EntireExpr::neg(substitute(e.lhs(), replacement));
    case K::pow: return EntireExpr::pow(substitute(e.lhs(), replacement), e.exponent());
    case K::exp: return EntireExpr::exp(substitute(e.lhs(), replacement));
  }
  return e;
}

std::optional<std::vector<cplx>> polynomial_coefficients(const EntireExpr& e) {
  using K = EntireExpr::Kind;
  switch (e.kind()) {
    case K::constant: return Coeffs{e.value()};
    case K::var: return Coeffs{0.0, 1.0};
    case K::add: {
      auto a = polynomial_coefficients(e.lhs());
      auto b = polynomial_coefficients(e.rhs());
      if (!a || !b) return std::nullopt;
      if (a->size() < b->size()) a->resize(b->size());
      for (std::size_t i = 0; i < b->size(); ++i) (*a)[i] += (*b)[i];
      trim(*a);
      return a;
    }
    case K::mul: {
      auto a = polynomial_coefficients(e.lhs());
      auto b = polynomial_coefficients(e.rhs());
      if (!a || !b) return std::nullopt;
      Coeffs r = poly_mul(*a, *b);
      trim(r);
      return r;
    }
    case K::neg: {
      auto a = polynomial_coefficients(e.lhs());
      if (!a) return std::nullopt;
      for (auto& c : *a) c = -c;
      return a;
    }
    case K::pow: {
      auto a = polynomial_coefficients(e.lhs());
      if (!a) return std::nullopt;
      Coeffs r{1.0};
      for (unsigned k = 0; k < e.exponent(); ++k) {
        r = poly_mul(r, *a);
        trim(r);
      }
      return r;
    }
    case K::exp: {
      auto a = polynomial_coefficients(e.lhs());
      if (!a || a->size() != 1) return std::nullopt;
      return Coeffs{std::exp((*a)[0])};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

HarmonicComponent::HarmonicComponent(EntireExpr f, Part part)
    : f_(std::move(f)), df_(derivative(f_)), d2f_(derivative(df_)), part_(part) {}

cplx HarmonicComponent::gradient(cplx z) const {
  // F' = u_x + i v_x, u_y = -v_x, v_y = u_x
  const cplx d = df_(z);
  if (part_ == Part::real) return {d.real(), -d.imag()};
  return {d.imag(), d.real()};
}

std::optional<int> HarmonicComponent::polynomial_degree() const {
  auto c = polynomial_coefficients(f_);
  if (!c) return std::nullopt;
  double scale = 0.0;
  for (const auto& x : *c) scale = std::max(scale, std::abs(x));
  for (int k = static_cast<int>(c->size()) - 1; k >= 1; --k)
    if (std::abs((*c)[static_cast<std::size_t>(k)]) > 1e-14 * scale) return k;
  return 0;
}

bool HarmonicComponent::is_constant() const {
  static constexpr std::array<cplx, 12> probes = {
      cplx{0.0, 0.0},          cplx{0.3183, 0.1127},    cplx{-0.7071, 0.5774},
      cplx{1.4142, -0.2718},   cplx{-1.7321, -1.6180},  cplx{2.2361, 2.6458},
      cplx{-3.3166, 0.4142},   cplx{0.6931, -3.1416},   cplx{4.4721, 1.1},
      cplx{-0.05, -5.3852},    cplx{6.0827, -6.2},      cplx{-7.3891, 7.0711}};
  for (const cplx z : probes)
    if (df_(z) != cplx{}) return false;
  return true;
}

HarmonicComponent HarmonicComponent::affine_pullback(cplx a, cplx b, double scale,
                                                     double shift) const {
  const EntireExpr arg = EntireExpr::add(EntireExpr::constant(a),
                                         EntireExpr::mul(EntireExpr::constant(b), EntireExpr::var()));
  EntireExpr g = substitute(f_, arg);
  if (shift != 0.0) {
    const cplx s = part_ == Part::real ? cplx{shift, 0.0} : cplx{0.0, shift};
    g = EntireExpr::add(g, EntireExpr::constant(s));
  }
  if (scale != 1.0) g = EntireExpr::mul(EntireExpr::constant(scale), g);
  return HarmonicComponent(std::move(g), part_);
}

std::string to_string(const HarmonicComponent& u) {
  return std::string(u.part() == Part::real ? "re(" : "im(") + to_string(u.expr()) + ")";
}

HarmonicMap parse_map(std::string_view src, std::string name) {
  // u=<sel>(<expr>); v=<sel>(<expr>)
  auto parse_component = [&](std::string_view part, char label,
                             std::size_t offset) -> HarmonicComponent {
    std::size_t i = 0;
    auto ws = [&] {
      while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
    };
    ws();
    if (i >= part.size() || part[i] != label)
      throw ParseError(std::string("expected '") + label + "='", offset + i);
    ++i;
    ws();
    if (i >= part.size() || part[i] != '=')
      throw ParseError(std::string("expected '=' after ") + label, offset + i);
    ++i;
    ws();
    Part sel;
    if (part.substr(i, 2) == "re") {
      sel = Part::real;
    } else if (part.substr(i, 2) == "im") {
      sel = Part::imag;
    } else {
      throw ParseError("expected re(...) or im(...)", offset + i);
    }
    i += 2;
    ws();
    if (i >= part.size() || part[i] != '(') throw ParseError("expected '('", offset + i);
    std::size_t close = part.find_last_of(')');
    if (close == std::string_view::npos || close < i)
      throw ParseError("expected ')'", offset + part.size());
    for (std::size_t k = close + 1; k < part.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(part[k])))
        throw ParseError("trailing characters", offset + k);
    const std::string_view body = part.substr(i + 1, close - i - 1);
    try {
      return HarmonicComponent(parse_expr(body), sel);
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()).substr(0, std::string(err.what()).rfind(" at position")),
                       offset + i + 1 + err.position());
    }
  };
  const std::size_t semi = src.find(';');
  if (semi == std::string_view::npos) throw ParseError("expected ';' between components", src.size());
  return HarmonicMap{parse_component(src.substr(0, semi), 'u', 0),
                     parse_component(src.substr(semi + 1), 'v', semi + 1), std::move(name)};
}

std::string to_string(const HarmonicMap& f) {
  return "u=" + to_string(f.u) + "; v=" + to_string(f.v);
}

namespace {

// G with u = Re G
EntireExpr real_form(const HarmonicComponent& u) {
  return u.part() == Part::real ? u.expr() : EntireExpr::constant(cplx{0.0, -1.0}) * u.expr();
}

}  // namespace

HarmonicMap rotate_map(const HarmonicMap& f, double theta) {
  const EntireExpr gu = real_form(f.u), gv = real_form(f.v);
  const EntireExpr c = EntireExpr::constant(std::cos(theta)), s = EntireExpr::constant(std::sin(theta));
  return HarmonicMap{HarmonicComponent(c * gu - s * gv, Part::real),
                     HarmonicComponent(s * gu + c * gv, Part::real), f.name};
}

}  // namespace hrange
