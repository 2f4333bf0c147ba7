#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hrange/lewis.hpp"

using namespace hrange;

namespace {

constexpr double pi = std::numbers::pi;

HarmonicComponent re(const char* s) { return {parse_expr(s), Part::real}; }
HarmonicComponent im(const char* s) { return {parse_expr(s), Part::imag}; }

double brute_max(const HarmonicComponent& u, cplx c, double r, bool absolute, int n = 2048) {
  double m = -INFINITY;
  for (int k = 0; k < n; ++k) {
    const double x = u(c + std::polar(r, kTwoPi * k / n));
    m = std::max(m, absolute ? std::abs(x) : x);
  }
  return m;
}

double brute_C0(const HarmonicComponent& u, cplx c, double r, double R) {
  const double Mr = brute_max(u, c, r, false);
  const double growth = brute_max(u, 0.0, R / 2, false) / Mr;
  const double doubling = brute_max(u, c, r, true) / brute_max(u, c, 0.75 * r, false);
  return std::max(growth, doubling);
}

}  // namespace

TEST_SUITE("lewis") {

TEST_CASE("find_zero") {
  {
    const auto z = find_zero(re("z"), Box{});
    CHECK(std::abs(z.real()) <= 1e-12);
  }
  {
    const auto z = find_zero(im("exp(z)"), Box{-1, 1, 2, 4});
    CHECK(std::abs(z.imag() - pi) <= 1e-10);
  }
  {
    const auto u = re("z^3 - 1");
    const auto z = find_zero(u, Box{0, 2, 0, 2});
    CHECK(Box{0, 2, 0, 2}.contains(z));
    CHECK(std::abs(u(z)) <= 1e-12);
  }
  CHECK_THROWS_AS(find_zero(re("z + 5"), Box{}), AnalysisError);
}

TEST_CASE("disc ratios at a given disc") {
  const auto d = lewis_disc_at(re("z"), 0.0, 1.0, 4.0);
  CHECK(d.doubling_ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(d.growth_ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(d.M == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("disc search on closed forms") {
  {
    const auto d = lewis_disc_search(re("z"), 4.0);
    CHECK(d.doubling_ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(std::abs(d.u_at_center) <= 1e-12);
    CHECK(d.budget_met);
  }
  {
    const auto u = re("z^3");
    for (double r : {1.0, 0.5, 0.25}) {
      const auto at0 = lewis_disc_at(u, 0.0, r, 2.0);
      CHECK(at0.doubling_ratio == doctest::Approx(std::pow(4.0 / 3.0, 3)).epsilon(1e-9));
    }
    const auto d = lewis_disc_search(u, 2.0);
    CHECK(d.C0() <= lewis_disc_at(u, 0.0, 1.0, 2.0).C0() + 1e-12);
    CHECK(std::abs(u(d.center)) <= 1e-12);
  }
  CHECK_THROWS_WITH_AS(lewis_disc_search(re("7"), 4.0), doctest::Contains("u constant"), AnalysisError);
  CHECK_THROWS_AS(lewis_disc_search(re("z + 100"), 4.0), AnalysisError);
}

TEST_CASE("disc search on Im exp is near the optimum of an oracle grid") {
  const auto u = im("exp(z)");
  const double R = 20.0;
  const auto d = lewis_disc_search(u, R);
  CHECK(d.budget_met);
  CHECK(std::abs(u(d.center)) <= 1e-12 * std::exp(std::abs(d.center.real())));
  CHECK(std::abs(d.center) + d.radius <= R * (1 + 1e-12));
  // independent recomputation of the chosen disc
  CHECK(d.C0() == doctest::Approx(brute_C0(u, d.center, d.radius, R)).epsilon(1e-3));

  double best = INFINITY;
  for (int k = -6; k <= 6; ++k) {
    const double y = k * pi;
    for (double x = -20.0; x <= 20.0; x += 0.5) {
      const cplx c(x, y);
      for (int j = 1; j <= 12; ++j) {
        const double r = R * std::pow(2.0, -j);
        if (std::abs(c) + r > R) continue;
        best = std::min(best, brute_C0(u, c, r, R));
      }
    }
  }
  CHECK(d.C0() <= best * (1 + 1e-2));
}

TEST_CASE("rescaling") {
  const auto f = parse_map("u=re(z); v=im(z)");
  const auto seq = rescaled_sequence(f, {2, 4, 8});
  REQUIRE(seq.maps.size() == 3);
  for (const auto& m : seq.maps)
    for (cplx z : {cplx(0.2, 0.3), cplx(-0.5, 0.1), cplx(0.9, -0.2)})
      CHECK(m.U(z) == doctest::Approx(z.real()).epsilon(1e-12));
  for (const auto& inv : seq.invariants) CHECK(inv.all());

  CHECK_THROWS_WITH_AS(rescaled_sequence(parse_map("u=re(3); v=im(z)"), {2, 4}),
                       doctest::Contains("u constant"), AnalysisError);

  // direct definition of U_n and V_n
  const auto g = parse_map("u=re(z^3); v=im(exp(z))");
  const auto disc = lewis_disc_search(g.u, 8.0);
  const auto rm = rescale(g, disc);
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.6, 0.3)}) {
    const cplx w = disc.center + disc.radius * z;
    CHECK(rm.U(z) == doctest::Approx(g.u(w) / disc.M).epsilon(1e-12));
    CHECK(rm.V(z) == doctest::Approx(g.v(w) / disc.M).epsilon(1e-12));
  }
}

TEST_CASE("rescaled invariants and monotone growth") {
  const auto f = parse_map("u=re(z^3); v=im(z^3)");
  const auto seq = rescaled_sequence(f, {1, 2, 4, 8, 16, 32, 64});
  CHECK(seq.monotone);
  REQUIRE(seq.maps.size() == 7);
  for (std::size_t k = 1; k < seq.maps.size(); ++k) CHECK(seq.maps[k].disc.M >= seq.maps[k - 1].disc.M);
  CHECK(seq.maps.back().disc.M / seq.maps.front().disc.M > 10.0);
  for (const auto& inv : seq.invariants) {
    CHECK(inv.u_at_zero <= 1e-9);
    CHECK(inv.sup_abs <= 1 + 1e-6);
    CHECK(inv.mass_34 >= 1 / inv.C0);
  }
  CHECK_THROWS_AS(rescaled_sequence(f, {4, 2}), AnalysisError);
}

TEST_CASE("rescaled range check") {
  {
    const auto f = parse_map("u=re(z); v=im(z)");
    const auto rm = rescale(f, lewis_disc_search(f.u, 8.0));
    CHECK(rescaled_range_check(rm, ArcSet::full()).conclusion.holds);
    const auto bad = rescaled_range_check(rm, ArcSet::point(0.0));
    CHECK_FALSE(bad.conclusion.holds);
    CHECK(bad.params.at("direction_violations") > 0);
  }
  {
    const auto f = parse_map("u=im(exp(z)); v=im(-exp(-z))");
    const auto D = ArcSet::points({0, pi / 2, pi, 3 * pi / 2}).fatten(5 * pi / 180);
    const auto seq = rescaled_sequence(f, {8, 16, 32});
    const auto v = rescaled_range_check(seq.maps.back(), D);
    CHECK(seq.maps.back().disc.M > 1e3);
    CHECK(v.conclusion.holds);
  }
}

TEST_CASE("zero-set inclusions") {
  // U = Re z, V = 2 Re z: the three sets coincide
  const auto f = parse_map("u=re(z); v=re(2*z)");
  const auto rm = rescale(f, lewis_disc_search(f.u, 4.0));
  const auto ok = zero_set_inclusions_check(rm);
  CHECK(ok.conclusion.holds);
  CHECK(ok.params.at("zeros_checked") > 0);

  // V = Im z vanishes off {U = 0}
  const auto g = parse_map("u=re(z); v=im(z)");
  const auto bad = zero_set_inclusions_check(rescale(g, lewis_disc_search(g.u, 4.0)));
  CHECK_FALSE(bad.conclusion.holds);
  REQUIRE_FALSE(bad.conclusion.witnesses.empty());
}

}  // TEST_SUITE
