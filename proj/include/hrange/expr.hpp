#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrange/error.hpp"

namespace hrange {

/// Immutable expression tree for an entire function of one complex variable.
///
/// The grammar has no division, logarithm or conjugation, so every tree is
/// entire by construction. Nodes are shared, which makes copies cheap and
/// evaluation safe from any number of threads.
class EntireExpr {
 public:
  enum class Kind { constant, var, add, mul, neg, pow, exp };

  /// Literal constant. `symbol` ("pi", "e", "i") is kept only for printing.
  static EntireExpr constant(cplx value, std::string symbol = {});
  static EntireExpr var();
  static EntireExpr add(EntireExpr lhs, EntireExpr rhs);
  static EntireExpr mul(EntireExpr lhs, EntireExpr rhs);
  static EntireExpr neg(EntireExpr arg);
  static EntireExpr pow(EntireExpr base, unsigned exponent);
  static EntireExpr exp(EntireExpr arg);

  Kind kind() const;
  /// Constant value; zero for non-constant nodes.
  cplx value() const;
  const std::string& symbol() const;
  unsigned exponent() const;
  /// First child (add/mul lhs, neg/pow/exp argument).
  const EntireExpr& lhs() const;
  /// Second child of add/mul.
  const EntireExpr& rhs() const;

  cplx operator()(cplx z) const;

  /// Structural equality: same shape, same constants (values compared exactly).
  friend bool operator==(const EntireExpr& a, const EntireExpr& b);

 private:
  struct Node;
  explicit EntireExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

EntireExpr operator+(const EntireExpr& a, const EntireExpr& b);
EntireExpr operator-(const EntireExpr& a, const EntireExpr& b);
EntireExpr operator*(const EntireExpr& a, const EntireExpr& b);
EntireExpr operator-(const EntireExpr& a);

EntireExpr parse_expr(std::string_view src);
std::string to_string(const EntireExpr& e);

inline cplx eval(const EntireExpr& e, cplx z) { return e(z); }

/// Symbolic d/dz with light constant folding.
EntireExpr derivative(const EntireExpr& e);

/// e(replacement(z)): substitutes the variable.
EntireExpr substitute(const EntireExpr& e, const EntireExpr& replacement);

/// Taylor coefficients c_0..c_n when the expression is a polynomial in z
/// (exp is allowed only around constant arguments); nullopt otherwise.
std::optional<std::vector<cplx>> polynomial_coefficients(const EntireExpr& e);

enum class Part { real, imag };

/// u = Re F or u = Im F for an entire F. Gradients come from F' through the
/// Cauchy-Riemann equations and are returned packed as u_x + i u_y.
class HarmonicComponent {
 public:
  HarmonicComponent(EntireExpr f, Part part);

  double operator()(cplx z) const {
    const cplx w = f_(z);
    return part_ == Part::real ? w.real() : w.imag();
  }
  cplx gradient(cplx z) const;

  cplx analytic(cplx z) const { return f_(z); }
  cplx analytic_derivative(cplx z) const { return df_(z); }
  cplx analytic_second_derivative(cplx z) const { return d2f_(z); }

  const EntireExpr& expr() const { return f_; }
  const EntireExpr& expr_derivative() const { return df_; }
  Part part() const { return part_; }

  /// Degree of the harmonic polynomial, or nullopt when F is not a polynomial.
  std::optional<int> polynomial_degree() const;
  /// True when F' vanishes on a fixed probe set (F' is entire, so this is
  /// constancy up to a coincidence of measure zero).
  bool is_constant() const;

  /// (u(a + b z) + shift) * scale, again a harmonic component.
  HarmonicComponent affine_pullback(cplx a, cplx b, double scale, double shift = 0.0) const;

 private:
  EntireExpr f_;
  EntireExpr df_;
  EntireExpr d2f_;
  Part part_;
};

std::string to_string(const HarmonicComponent& u);

/// f = u + i v with harmonic u, v.
struct HarmonicMap {
  HarmonicComponent u;
  HarmonicComponent v;
  std::string name;

  cplx operator()(cplx z) const { return {u(z), v(z)}; }
};

inline cplx eval_map(const HarmonicMap& f, cplx z) { return f(z); }

/// Parses `u=re(<expr>); v=im(<expr>)`; either selector may be re or im.
HarmonicMap parse_map(std::string_view src, std::string name = {});
std::string to_string(const HarmonicMap& f);

/// e^{i theta} f, i.e. (cos t u - sin t v) + i (sin t u + cos t v).
HarmonicMap rotate_map(const HarmonicMap& f, double theta);

}  // namespace hrange
