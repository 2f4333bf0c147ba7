#include "hrange/circle.hpp"

#include "hrange/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrange {

namespace {

// Golden-section maximization of g on [a, b].
std::pair<double, double> golden_max(const auto& g, double a, double b, int iters = 60) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int k = 0; k < iters; ++k) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g(x2);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Maximum of g over [0, 2pi): uniform samples, then golden-section refinement
// of the three best local-maximum brackets. Ties go to the smaller angle.
CircleMax circle_extremum(const auto& g, cplx z, double r, int n) {
  n = std::max(n, 8);
  std::vector<double> vals(static_cast<std::size_t>(n));
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(j)] = g(j * h);

  std::vector<int> peaks;
  for (int j = 0; j < n; ++j) {
    const double v = vals[static_cast<std::size_t>(j)];
    const double prev = vals[static_cast<std::size_t>((j + n - 1) % n)];
    const double next = vals[static_cast<std::size_t>((j + 1) % n)];
    if (v >= prev && v >= next) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
  });
  if (peaks.size() > 3) peaks.resize(3);

  double best_t = 0.0;
  double best_v = -std::numeric_limits<double>::infinity();
  auto offer = [&](double t, double v) {
    t = wrap_angle(t);
    if (v > best_v || (v == best_v && t < best_t)) {
      best_v = v;
      best_t = t;
    }
  };
  for (int j = 0; j < n; ++j) offer(j * h, vals[static_cast<std::size_t>(j)]);
  for (int j : peaks) {
    const auto [t, v] = golden_max(g, (j - 1) * h, (j + 1) * h);
    offer(t, v);
  }
  return CircleMax{z, r, best_v, best_t, n};
}

}  // namespace

CircleMax circle_max(const HarmonicComponent& u, cplx z, double r, int n) {
  return circle_extremum([&](double t) { return u(z + std::polar(r, t)); }, z, r, n);
}

CircleMax circle_max_abs(const HarmonicComponent& u, cplx z, double r, int n) {
  return circle_extremum([&](double t) { return std::abs(u(z + std::polar(r, t))); }, z, r, n);
}

CircleMax circle_min(const HarmonicComponent& u, cplx z, double r, int n) {
  CircleMax m = circle_extremum([&](double t) { return -u(z + std::polar(r, t)); }, z, r, n);
  m.value = -m.value;
  return m;
}

double FourierProfile::reconstruct(double theta) const {
  double s = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    s += (coefficients[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
  return s;
}

FourierProfile fourier_profile(const HarmonicComponent& u, cplx z, double r, int K, int N) {
  if (!(r > 0)) throw AnalysisError("fourier profile needs a positive radius");
  N = std::max(N, 2 * K + 2);
  std::vector<double> vals(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j)
    vals[static_cast<std::size_t>(j)] = u(z + std::polar(r, kTwoPi * j / N));
  FourierProfile p{z, r, std::vector<cplx>(static_cast<std::size_t>(K + 1))};
  for (int k = 0; k <= K; ++k) {
    cplx acc{};
    for (int j = 0; j < N; ++j) {
      // index reduction keeps the twiddle exact in angle
      const int m = static_cast<int>((static_cast<long long>(k) * j) % N);
      acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -kTwoPi * m / N);
    }
    p.coefficients[static_cast<std::size_t>(k)] = acc * ((k == 0 ? 1.0 : 2.0) / N);
  }
  return p;
}

InequalityCheck harnack_bound_check(const HarmonicComponent& u, cplx z0, double r, double s) {
  if (!(r > 0) || !(s > 0) || !(s < r))
    throw AnalysisError("harnack check needs 0 < s < r");
  constexpr int radii = 48, angles = 256;
  for (int i = 0; i <= radii; ++i) {
    const double rho = r * i / radii;
    for (int j = 0; j < (i == 0 ? 1 : angles); ++j) {
      const cplx w = z0 + std::polar(rho, kTwoPi * j / angles);
      if (!(u(w) > 0)) throw AnalysisError("u is not positive on the disc", w);
    }
  }
  const CircleMax lo = circle_min(u, z0, r);
  if (!(lo.value > 0))
    throw AnalysisError("u is not positive on the disc", z0 + std::polar(r, lo.argmax_angle));
  InequalityCheck c;
  c.lhs = circle_max(u, z0, s).value;
  c.rhs = (r + s) / (r - s) * u(z0);
  c.holds = holds_with_slack(c.lhs, c.rhs);
  return c;
}

InequalityCheck lemma_abs_check(const HarmonicComponent& u, cplx z0, double r) {
  if (!(r > 0)) throw AnalysisError("lemma check needs a positive radius");
  const double scale = std::max(1.0, circle_max_abs(u, z0, r).value);
  if (std::abs(u(z0)) > 1e-9 * scale) throw AnalysisError("center-not-zero", z0);
  InequalityCheck c;
  c.lhs = circle_max_abs(u, z0, 2.0 * r / 3.0).value;
  c.rhs = 4.0 * circle_max(u, z0, r).value;
  c.holds = holds_with_slack(c.lhs, c.rhs);
  return c;
}

namespace {

int leading_index(const FourierProfile& p, double tol) {
  double peak = 0.0;
  for (std::size_t k = 1; k < p.coefficients.size(); ++k)
    peak = std::max(peak, std::abs(p.coefficients[k]));
  if (!(peak > 0) || peak < 1e-300) return 0;
  for (std::size_t k = 1; k < p.coefficients.size(); ++k)
    if (std::abs(p.coefficients[k]) > tol * peak) return static_cast<int>(k);
  return 0;
}

}  // namespace

int multiplicity(const HarmonicComponent& u, cplx z0, double r, double tol) {
  if (!(r > 0)) throw AnalysisError("multiplicity needs a positive radius");
  const double scale = circle_max_abs(u, z0, r).value;
  if (std::abs(u(z0)) > std::max(tol, 1e-9) * scale) throw AnalysisError("center-not-zero", z0);
  int prev = leading_index(fourier_profile(u, z0, r), tol);
  for (int halving = 1; halving <= 8; ++halving) {
    r *= 0.5;
    const int k = leading_index(fourier_profile(u, z0, r), tol);
    if (k > 0 && k == prev) return k;
    prev = k;
  }
  throw AnalysisError("degenerate zero: no stable multiplicity", z0);
}

}  // namespace hrange
