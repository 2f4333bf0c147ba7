#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hrange/zeros.hpp"

using namespace hrange;

namespace {

constexpr double pi = std::numbers::pi;

HarmonicComponent re(const std::string& s) { return {parse_expr(s), Part::real}; }
HarmonicComponent im(const std::string& s) { return {parse_expr(s), Part::imag}; }

// Sign changes of u on a circle by dense sampling.
int dense_sign_changes(const HarmonicComponent& u, double R, int n = 200'000) {
  int count = 0;
  double prev = u(cplx(R, 0));
  for (int k = 1; k <= n; ++k) {
    const double x = u(std::polar(R, kTwoPi * k / n));
    if ((x > 0) != (prev > 0)) ++count;
    prev = x;
  }
  return count;
}

double max_vertex_residual(const HarmonicComponent& u, const std::vector<ZeroCurve>& cs) {
  double m = 0.0;
  for (const auto& c : cs)
    for (auto z : c.points) m = std::max(m, std::abs(u(z)));
  return m;
}

std::vector<cplx> all_points(const std::vector<ZeroCurve>& cs) {
  std::vector<cplx> out;
  for (const auto& c : cs) out.insert(out.end(), c.points.begin(), c.points.end());
  return out;
}

}  // namespace

TEST_SUITE("zeros") {

TEST_CASE("zero set of Re z is one segment") {
  const auto u = re("z");
  const auto cs = trace_zero_set(u, Box{}, 0.01);
  REQUIRE(cs.size() == 1);
  const auto& p = cs[0].points;
  for (auto z : p) CHECK(std::abs(z.real()) <= 1e-12);
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end(),
                                            [](cplx a, cplx b) { return a.imag() < b.imag(); });
  CHECK(lo->imag() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(hi->imag() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cs[0].arc_length == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("zero set of Re z^2 is four rays") {
  const auto u = re("z^2");
  const auto cs = trace_zero_set(u, Box{}, 0.01);
  CHECK(cs.size() == 4);
  std::vector<double> dirs;
  for (const auto& c : cs) {
    for (auto z : c.points) CHECK(std::abs(std::abs(z.real()) - std::abs(z.imag())) <= 1e-8);
    const cplx far = *std::max_element(c.points.begin(), c.points.end(),
                                       [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    dirs.push_back(wrap_angle(std::arg(far)));
  }
  std::sort(dirs.begin(), dirs.end());
  REQUIRE(dirs.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(dirs[k] == doctest::Approx(pi / 4 + k * pi / 2).epsilon(1e-6));
}

TEST_CASE("zero set of Im exp z is three horizontal lines") {
  const auto u = im("exp(z)");
  const Box box{-1, 1, -4, 4};
  const auto cs = trace_zero_set(u, box, 0.02);
  std::vector<double> seen;
  for (const auto& c : cs) {
    double ymin = INFINITY, ymax = -INFINITY, xmin = INFINITY, xmax = -INFINITY;
    for (auto z : c.points) {
      ymin = std::min(ymin, z.imag()), ymax = std::max(ymax, z.imag());
      xmin = std::min(xmin, z.real()), xmax = std::max(xmax, z.real());
    }
    CHECK(ymax - ymin <= 1e-8);
    CHECK(xmin == doctest::Approx(-1.0));
    CHECK(xmax == doctest::Approx(1.0));
    seen.push_back(ymin);
  }
  std::sort(seen.begin(), seen.end());
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == doctest::Approx(-pi).epsilon(1e-9));
  CHECK(std::abs(seen[1]) <= 1e-9);
  CHECK(seen[2] == doctest::Approx(pi).epsilon(1e-9));
}

TEST_CASE("traced vertices are zeros and retracing is stable") {
  for (const char* s : {"z^3 - 1", "exp(z) - 2", "z^5 + z", "z^2*exp(z)", "(z - 0.3)^4 + 0.1*z"}) {
    CAPTURE(s);
    const auto u = re(s);
    const Box box{-2, 2, -2, 2};
    double scale = 0;
    for (int k = 0; k < 64; ++k) scale = std::max(scale, std::abs(u(std::polar(2.0, kTwoPi * k / 64))));
    const double step = 0.02;
    const auto a = trace_zero_set(u, box, step);
    const auto b = trace_zero_set(u, box, step / 2);
    REQUIRE_FALSE(a.empty());
    CHECK(max_vertex_residual(u, a) <= 1e-8 * scale);
    CHECK(max_vertex_residual(u, b) <= 1e-8 * scale);
    CHECK(polyline_hausdorff(all_points(a), all_points(b)) <= step);
  }
}

TEST_CASE("polyline Hausdorff distance") {
  const std::vector<cplx> a{{0, 0}, {1, 0}}, b{{0, 0.5}, {1, 0}};
  CHECK(polyline_hausdorff(a, b) == doctest::Approx(0.5));
  CHECK(polyline_hausdorff(a, a) == 0.0);
}

TEST_CASE("local structure of Re z^n") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const auto ls = local_structure(re("z^" + std::to_string(n)), 0.0);
    CHECK(ls.multiplicity == n);
    REQUIRE(ls.ray_angles.size() == static_cast<std::size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k)
      CHECK(std::abs(ls.ray_angles[k] - (pi / 2 + k * pi) / n) <= 1e-6);
    REQUIRE(ls.sector_signs.size() == ls.ray_angles.size());
    for (std::size_t k = 0; k + 1 < ls.sector_signs.size(); ++k)
      CHECK(ls.sector_signs[k] == -ls.sector_signs[k + 1]);
  }
  const auto e = local_structure(im("exp(z)"), 0.0);
  CHECK(e.multiplicity == 1);
  REQUIRE(e.ray_angles.size() == 2);
  CHECK(std::abs(e.ray_angles[0]) <= 1e-6);
  CHECK(std::abs(e.ray_angles[1] - pi) <= 1e-6);
}

TEST_CASE("cleaning check") {
  {
    const auto v = cleaning_check(re("z"), re("2*z"), 1.0);
    CHECK(v.conclusion.holds);
    CHECK(v.params.at("form") == 1.0);
  }
  {
    const auto v = cleaning_check(re("z"), im("z"), 1.0);
    CHECK_FALSE(v.conclusion.holds);
    CHECK_FALSE(v.conclusion.witnesses.empty());
  }
  {
    const auto v = cleaning_check(re("z^2"), re("-3*z^2"), 1.0);
    CHECK(v.conclusion.holds);
    CHECK(v.params.at("form") == -1.0);
  }
  CHECK_FALSE(cleaning_check(re("z + 1"), re("z + 1"), 0.5).hypothesis.holds);
}

TEST_CASE("tract counts") {
  CHECK(tract_report(re("z^3"), 10.0).sign_changes == 6);
  CHECK(tract_report(re("z^2 + 5*z"), 100.0).sign_changes == 4);
  CHECK(tract_report(re("z"), 1.0).sign_changes == 2);
  CHECK_THROWS_AS(tract_report(im("exp(z)"), 10.0), AnalysisError);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 6;
    std::string s = "(" + std::to_string(c(rng)) + " + " + std::to_string(c(rng)) + "*i)*z^" + std::to_string(n);
    for (int k = 0; k < n; ++k)
      s += " + (" + std::to_string(c(rng)) + " + " + std::to_string(c(rng)) + "*i)*z^" + std::to_string(k);
    CAPTURE(s);
    const auto u = re(s);
    const double R = std::max(2.0, 2.0 * tract_dominance_radius(u));
    const auto t = tract_report(u, R);
    CHECK(t.degree == n);
    CHECK(t.sign_changes == dense_sign_changes(u, R));
    CHECK(t.sign_changes == 2 * n);
  }

  const auto t = tract_report(re("z^3"), 10.0);
  REQUIRE(t.crossing_angles.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(t.crossing_angles[k] - (pi / 6 + k * pi / 3)) < 1e-8);
}

TEST_CASE("circle sign changes") {
  const auto a = circle_sign_changes(re("z^2"), 0.0, 1.0);
  REQUIRE(a.size() == 4);
  CHECK(a[0] == doctest::Approx(pi / 4).epsilon(1e-9));
  CHECK(circle_sign_changes(re("z + 5"), 0.0, 1.0).empty());
}

TEST_CASE("linear dependence") {
  {
    const auto f = parse_map("u=re(z); v=re(3*z)");
    const auto s = sample_range(f, 10.0, 64, 1);
    const auto d = detect_dependence(f, s, 1.0, 1.0);
    CHECK(d.dependent);
    CHECK(std::abs(d.b - 1.0 / 3.0) <= 1e-12);
    CHECK(d.hypothesis_holds);
  }
  {
    const auto f = parse_map("u=im(exp(z)); v=im(-exp(-z))");
    const auto s = sample_range(f, 30.0, 128, 1);
    const auto d = detect_dependence(f, s, 1.0, 1.0);
    CHECK_FALSE(d.dependent);
    CHECK(d.residual >= 1e-2);
  }
  {
    const auto f = parse_map("u=re(z^2); v=im(z^2)");
    const auto s = sample_range(f, 10.0, 64, 1);
    const auto d = detect_dependence(f, s, 1.0, 1.0);
    CHECK_FALSE(d.hypothesis_holds);
    REQUIRE(d.hypothesis_witness);
    const cplx w = *d.hypothesis_witness;
    CHECK(std::abs(f.u(w)) > std::abs(f.v(w)));
  }
}

}  // TEST_SUITE
