#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "hrange/range.hpp"
#include "hrange/report.hpp"

using namespace hrange;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

DirectionEstimate directions_of(const char* map, int n = 256) {
  const auto f = parse_map(map);
  const auto s = sample_range(f, default_radius(f), n, 1);
  return estimate_directions(s);
}

struct ThreadEnv {
  explicit ThreadEnv(const char* n) { setenv("HARMONIC_RANGE_THREADS", n, 1); }
  ~ThreadEnv() { unsetenv("HARMONIC_RANGE_THREADS"); }
};

}  // namespace

TEST_SUITE("range") {

TEST_CASE("samples are deterministic and independent of the thread count") {
  const auto f = parse_map("u=re(z); v=im(exp(z))");
  std::string first;
  for (const char* threads : {"1", "3", "8"}) {
    ThreadEnv env(threads);
    const auto s = sample_range(f, 30.0, 96, 5);
    const auto e = estimate_directions(s);
    std::string text = dump(summary_json(s)) + dump(to_json(e));
    for (std::size_t k = 0; k < s.size(); k += 97) text += std::to_string(s.w[k].real()) + "," + std::to_string(s.w[k].imag());
    if (first.empty()) first = text;
    CHECK(text == first);
  }
  const auto a = sample_range(f, 30.0, 64, 1), b = sample_range(f, 30.0, 64, 2);
  CHECK(a.z != b.z);
}

TEST_CASE("sampled points are inside the disc and images are exact") {
  const auto f = parse_map("u=re(z^2); v=im(z^3)");
  const auto s = sample_range(f, 10.0, 64, 3);
  REQUIRE(s.size() > 64u * 64u);
  CHECK(s.grid_count + s.random_count + s.refined_count == s.size());
  for (std::size_t k = 0; k < s.size(); k += 13) {
    CHECK(std::abs(s.z[k]) <= 10.0 * (1 + 1e-12));
    CHECK(s.w[k] == f(s.z[k]));
  }
}

TEST_CASE("sample bounds of the range") {
  {
    const auto f = parse_map("u=re(z); v=im(z)");
    const auto s = sample_range(f, 1.0, 128, 1);
    for (const auto& w : s.w) CHECK(std::abs(w) <= 1.0 + 1e-12);
  }
  {
    const auto f = parse_map("u=re(z); v=im(exp(z))");
    const auto s = sample_range(f, 30.0, 128, 1);
    for (const auto& w : s.w) CHECK(std::abs(w.imag()) <= std::exp(w.real()) * (1 + 1e-12));
  }
  {
    const auto f = parse_map("u=im(exp(z)); v=im(-exp(-z))");
    const auto s = sample_range(f, 30.0, 128, 1);
    for (const auto& w : s.w) CHECK(std::abs(w.real() * w.imag()) <= 1.0 + 1e-9);
  }
}

TEST_CASE("asymptotic directions of worked examples") {
  {
    const auto e = directions_of("u=re(z); v=im(exp(z))");
    const ArcSet want = ArcSet::point(pi).unite(ArcSet::arc(-pi / 2, pi));
    CHECK(hausdorff(e.arcs, want) <= 2 * deg);
  }
  {
    const auto e = directions_of("u=im(exp(z)); v=im(-exp(-z))");
    const ArcSet want = ArcSet::points({0, pi / 2, pi, 3 * pi / 2});
    CHECK(hausdorff(e.arcs, want) <= 2 * deg);
  }
  {
    const auto e = directions_of("u=re(5); v=im(z)");
    CHECK(hausdorff(e.arcs, ArcSet::points({pi / 2, 3 * pi / 2})) <= 2 * deg);
  }
  {
    const auto e = directions_of("u=re(z); v=im(z)", 128);
    CHECK(e.arcs.is_full());
  }
  {
    const auto f = parse_map("u=re(3); v=im(-7*i)");
    const auto s = sample_range(f, 10.0, 64, 1);
    const auto e = estimate_directions(s);
    CHECK(e.arcs.empty());
    CHECK(e.low_confidence);
  }
}

TEST_CASE("antipodal pairs") {
  const auto p = antipodal_pairs(ArcSet::points({0.0, pi}), 1e-9);
  const auto reps = antipodal_representatives(p);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == doctest::Approx(0.0).epsilon(1e-9));

  const auto lewis = ArcSet::points({pi / 4, pi, 3 * pi / 2});
  CHECK(antipodal_pairs(lewis, 1 * deg).empty());

  const auto cross = ArcSet::points({0, pi / 2, pi, 3 * pi / 2});
  CHECK(antipodal_representatives(antipodal_pairs(cross, 1e-9)).size() == 2);

  // half circle [0, pi] pairs only its endpoints
  const auto half = antipodal_representatives(antipodal_pairs(ArcSet::arc(0, pi), 1e-9));
  REQUIRE(half.size() == 1);
  CHECK(half[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("gap alpha") {
  const auto lewis = ArcSet::points({pi / 4, pi, 3 * pi / 2});
  const double tol = 1 * deg;
  CHECK(gap_margin(lewis, pi / 8) >= tol);
  const auto a = antipodal_gap_alpha(lewis, tol);
  REQUIRE(a);
  CHECK(gap_margin(lewis, *a) >= gap_margin(lewis, pi / 8) - 1e-3);
  CHECK_FALSE(antipodal_gap_alpha(ArcSet::points({0, pi}), tol));
  CHECK_FALSE(antipodal_gap_alpha(ArcSet::arc(10 * deg, kTwoPi - 10 * deg), tol));
  // oracle for gap_margin: brute distance from the three test points
  for (double alpha : {0.1, 0.5, 2.0}) {
    double m = INFINITY;
    for (double t : {alpha - pi / 2, alpha, alpha + pi / 2})
      for (double e : {pi / 4, pi, 3 * pi / 2}) m = std::min(m, circle_distance(t, e));
    CHECK(gap_margin(lewis, alpha) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("cone normalization") {
  CHECK_FALSE(cone_avoidance_normalize(ArcSet::points({0, pi}), 1 * deg));
  const auto n = cone_avoidance_normalize(ArcSet::point(pi / 3), 1 * deg);
  REQUIRE(n);
  CHECK(n->a > 1.0);
  CHECK(n->phi < pi / 4);
  CHECK(std::abs(std::polar(1.0, n->alpha + n->theta) - cplx(-1, 0)) < 1e-9);
  // rotated set avoids both cones
  for (const auto& c : n->rotated.components()) {
    CHECK_FALSE(n->whole.contains_direction(c.start));
    CHECK_FALSE(n->half.contains_direction(c.start));
  }
  CHECK(hausdorff(n->rotated, ArcSet::point(pi / 3).rotate(n->theta)) < 1e-12);

  const auto lewis = cone_avoidance_normalize(ArcSet::points({pi / 4, pi, 3 * pi / 2}), 1 * deg);
  REQUIRE(lewis);
  const auto fit = fit_i_alpha(lewis->rotated, 1 * deg);
  CHECK(fit);
}

TEST_CASE("I_alpha arcs") {
  const double a = 0.3;
  const auto I = i_alpha_arcs(a);
  CHECK(I.measure() == doctest::Approx(kTwoPi - 6 * a).epsilon(1e-12));
  CHECK(I.contains(0.0));
  CHECK(I.contains(3 * pi / 4));
  CHECK_FALSE(I.contains(pi / 2));
  CHECK_FALSE(I.contains(3 * pi / 2 - a / 2));
  const auto fit = fit_i_alpha(ArcSet::points({0.0, 2.0, 4.0}), 1e-6);
  REQUIRE(fit);
  CHECK(i_alpha_arcs(*fit).fatten(1e-6).contains(2.0));
  CHECK_FALSE(fit_i_alpha(ArcSet::point(pi / 2), 1e-6));
  CHECK_FALSE(fit_i_alpha(ArcSet::full(), 1 * deg));
}

TEST_CASE("Phi profile") {
  {
    const auto s = sample_range(parse_map("u=re(z); v=im(z)"), 1.0, 256, 1);
    const auto p = phi_profile(s, 64);
    for (std::size_t k = 2; k + 2 < p.bins(); ++k) {
      if (p.empty[k]) continue;
      const double lo = p.edges[k], hi = p.edges[k + 1];
      const double top = std::sqrt(1 - std::min(lo * lo, hi * hi));
      const double bottom = std::sqrt(1 - std::max(lo * lo, hi * hi));
      CHECK(p.phi[k] <= top + 1e-12);
      CHECK(p.phi[k] >= bottom - 2e-2);
    }
    const auto s100 = sample_range(parse_map("u=re(z); v=im(z)"), 100.0, 256, 1);
    CHECK_FALSE(phi_sublinearity_check(phi_profile(s100)).conclusion.holds);
  }
  {
    const auto s = sample_range(parse_map("u=re(z); v=im(exp(z))"), 30.0, 256, 1);
    const auto p = phi_profile(s, 128);
    int compared = 0;
    for (std::size_t k = 0; k < p.bins(); ++k) {
      if (p.empty[k] || p.edges[k] < -20 || p.edges[k + 1] > 20) continue;
      CHECK(p.phi[k] <= std::exp(p.edges[k + 1]) * (1 + 1e-9));
      CHECK(p.phi[k] >= std::exp(p.edges[k]) * 0.99);
      ++compared;
    }
    CHECK(compared > 50);
  }
  {
    const auto s = sample_range(parse_map("u=re(z); v=re(-4)"), 100.0, 128, 1);
    const auto p = phi_profile(s);
    for (double x : p.phi) CHECK(x == 0.0);
    CHECK(phi_sublinearity_check(p).conclusion.holds);
  }
  {
    const auto s = sample_range(parse_map("u=re(z); v=re(3)"), 100.0, 128, 1);
    CHECK(phi_sublinearity_check(phi_profile(s)).conclusion.holds);
  }
}

}  // TEST_SUITE
