#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hrange/sampling.hpp"
#include "hrange/theorems.hpp"

using namespace hrange;

namespace {

constexpr double pi = std::numbers::pi;

struct Setup {
  HarmonicMap f;
  RangeSample s;
  DirectionEstimate e;
};

Setup setup(const char* map, double R = 0, int n = 128) {
  auto f = parse_map(map);
  auto s = sample_range(f, R > 0 ? R : default_radius(f), n, 1);
  auto e = estimate_directions(s);
  return {std::move(f), std::move(s), std::move(e)};
}

}  // namespace

TEST_SUITE("theorems") {

TEST_CASE("constancy tolerance") {
  CHECK(constant_within_tolerance({3.0, 3.0, 3.0 + 1e-12}));
  CHECK_FALSE(constant_within_tolerance({3.0, 3.1}));
  CHECK(constant_within_tolerance({}));
}

TEST_CASE("Lewis region") {
  {
    const auto t = setup("u=re(3); v=im(-7*i)", 10.0, 64);
    const auto v = check_lewis_region(t.f, 10.0, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
    CHECK(v.consistent());
  }
  {
    const auto t = setup("u=re(z); v=re(z)", 10.0, 64);
    const auto v = check_lewis_region(t.f, 1.0, t.s);
    CHECK_FALSE(v.hypothesis.holds);
    REQUIRE_FALSE(v.hypothesis.witnesses.empty());
    const cplx z = v.hypothesis.witnesses[0].point;
    CHECK(std::max(t.f.u(z), t.f.v(z)) < -1.0);
    CHECK(v.consistent());
  }
  {
    const auto t = setup("u=re(z); v=im(z)", 10.0, 64);
    const auto v = check_lewis_region(t.f, 1.0, t.s);
    CHECK_FALSE(v.hypothesis.holds);
    CHECK_FALSE(v.conclusion.holds);
  }
}

TEST_CASE("antipodal directions") {
  {
    const auto t = setup("u=re(z); v=im(exp(z))");
    const auto v = check_antipodal_theorem(t.f, t.s, t.e, pi / 180);
    CHECK_FALSE(v.hypothesis.holds);
    // {0, pi} and the endpoints {pi/2, 3pi/2} of the half circle
    CHECK(v.params.at("antipodal_pairs") == 2.0);
    const auto reps = antipodal_representatives(antipodal_pairs(t.e.arcs, pi / 180));
    CHECK(std::any_of(reps.begin(), reps.end(), [](double a) { return std::abs(a) < pi / 90; }));
    CHECK(v.consistent());
  }
  {
    const auto t = setup("u=im(exp(z)); v=im(-exp(-z))");
    const auto v = check_antipodal_theorem(t.f, t.s, t.e, pi / 180);
    CHECK_FALSE(v.hypothesis.holds);
    CHECK(v.params.at("antipodal_pairs") == 2.0);
  }
  {
    const auto t = setup("u=re(3); v=im(-7*i)", 10.0, 64);
    const auto v = check_antipodal_theorem(t.f, t.s, t.e, pi / 180);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
  }
}

TEST_CASE("half-plane directions") {
  {
    const auto t = setup("u=re(5); v=im(z)");
    const auto v = check_halfplane_theorem(t.f, 0.0, t.e, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
    CHECK(v.params.at("median") == doctest::Approx(5.0));
  }
  {
    const auto t = setup("u=re(z); v=re(2*z)");
    const double alpha = std::atan2(-1.0, 2.0);
    const auto v = check_halfplane_theorem(t.f, alpha, t.e, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.params.at("boundary") == 1.0);
    CHECK(v.conclusion.holds);
    CHECK(std::abs(v.params.at("median")) <= 1e-9);
  }
  {
    const auto t = setup("u=re(z); v=im(z)");
    const auto v = check_halfplane_theorem(t.f, 0.0, t.e, t.s);
    CHECK_FALSE(v.hypothesis.holds);
    CHECK(v.consistent());
  }
}

TEST_CASE("sublinear bound on v") {
  {
    const auto t = setup("u=re(z); v=re(0)");
    const auto v = check_cor_alpha(t.f, 1.0, 0.5, 0.0, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
  }
  {
    const auto t = setup("u=re(z); v=im(z)");
    const auto v = check_cor_alpha(t.f, 1.0, 0.5, 10.0, t.s);
    CHECK_FALSE(v.hypothesis.holds);
    REQUIRE_FALSE(v.hypothesis.witnesses.empty());
    const cplx z = v.hypothesis.witnesses[0].point;
    CHECK(t.f.v(z) > std::sqrt(std::abs(t.f.u(z))) + 10.0);
  }
  for (double c : {-5.0, 0.0, 2.0}) {
    const auto t = setup(("u=re(z); v=re(" + std::to_string(c) + ")").c_str());
    const auto v = check_cor_alpha(t.f, 1.0, 0.5, 2.0, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
  }
  const auto t = setup("u=re(z); v=re(0)", 10.0, 64);
  CHECK_THROWS_AS(check_cor_alpha(t.f, 1.0, 1.0, 0.0, t.s), AnalysisError);
}

TEST_CASE("linear relation for polynomial u") {
  {
    const auto t = setup("u=re(z); v=re(3*z)");
    const auto v = check_murdoch_kuran(t.f, 1.0, 1.0, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.conclusion.holds);
    CHECK(std::abs(v.params.at("b") - 1.0 / 3.0) <= 1e-12);
    CHECK(v.params.at("line_residual") <= 1e-6);
  }
  {
    const auto t = setup("u=im(exp(z)); v=im(-exp(-z))");
    const auto v = check_murdoch_kuran(t.f, 1.0, 1.0, t.s);
    CHECK_FALSE(v.hypothesis.applicable);
  }
  {
    const auto t = setup("u=re(z^2); v=re(z^2)");
    const auto v = check_murdoch_kuran(t.f, 2.0, 1.0, t.s);
    CHECK(v.hypothesis.holds);
    CHECK(v.params.at("b") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.conclusion.holds);
  }
}

TEST_CASE("log 2 inequalities") {
  {
    const auto v = check_log2_inequalities({0.5});
    CHECK(v.conclusion.holds);
    CHECK(v.params.at("min_log_max") == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  }
  {
    const auto v = check_log2_inequalities({10.0});
    CHECK(v.params.at("max_log_plus_difference") == doctest::Approx(std::log(10.0 / 9.0)).epsilon(1e-12));
    CHECK(std::abs(v.params.at("max_log_plus_difference") - 0.105) < 1e-3);
  }
  {
    auto zs = quasi_random_disc(1'000'000, 100.0, 7);
    std::erase_if(zs, [](cplx z) { return std::abs(z) < 1e-9 || std::abs(z - 1.0) < 1e-9; });
    // oracle: direct evaluation of both inequalities
    std::size_t bad = 0;
    const double l2 = std::log(2.0);
    for (cplx z : zs) {
      const double a = std::log(std::max(1.0, std::abs(z))), b = std::log(std::max(1.0, std::abs(z - 1.0)));
      const double m = std::max(std::log(std::abs(z)), std::log(std::abs(z - 1.0)));
      if (std::abs(a - b) > l2 * (1 + 1e-9) || m < -l2 * (1 + 1e-9)) ++bad;
    }
    CHECK(bad == 0);
    CHECK(check_log2_inequalities(zs).conclusion.holds);
  }
  CHECK_THROWS_AS(check_log2_inequalities({1.0}), AnalysisError);
  CHECK_THROWS_AS(check_log2_inequalities({0.0}), AnalysisError);
}

}  // TEST_SUITE
