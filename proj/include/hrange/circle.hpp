#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hrange/expr.hpp"

namespace hrange {

/// M(u, z, r): the maximum of u over the circle |w - z| = r.
struct CircleMax {
  cplx center;
  double radius = 0.0;
  double value = 0.0;
  double argmax_angle = 0.0;  // in [0, 2pi)
  int samples_used = 0;
};

inline constexpr int kCircleSamples = 4096;

CircleMax circle_max(const HarmonicComponent& u, cplx z, double r, int n = kCircleSamples);
/// M(|u|, z, r).
CircleMax circle_max_abs(const HarmonicComponent& u, cplx z, double r, int n = kCircleSamples);
/// Minimum of u over the circle; `value` holds the minimum.
CircleMax circle_min(const HarmonicComponent& u, cplx z, double r, int n = kCircleSamples);

/// Coefficients c_k with u(center + r e^{it}) = sum_k Re(c_k e^{ikt}).
struct FourierProfile {
  cplx center;
  double radius = 0.0;
  std::vector<cplx> coefficients;

  double reconstruct(double theta) const;
};

FourierProfile fourier_profile(const HarmonicComponent& u, cplx z, double r, int K = 64,
                               int N = 1024);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kHoldsSlack = 1e-9;

inline bool holds_with_slack(double lhs, double rhs) {
  return lhs <= rhs + kHoldsSlack * std::max(std::abs(lhs), std::abs(rhs));
}

/// M(u, z0, s) <= (r+s)/(r-s) u(z0) for u > 0 on the closed disc D(z0, r).
/// Throws AnalysisError (with a witness) if positivity fails on the sample grid.
InequalityCheck harnack_bound_check(const HarmonicComponent& u, cplx z0, double r, double s);

/// M(|u|, z0, 2r/3) <= 4 M(u, z0, r) for u(z0) = 0.
InequalityCheck lemma_abs_check(const HarmonicComponent& u, cplx z0, double r);

/// Order of vanishing of u at z0, read from the first significant Fourier
/// coefficient; the radius is halved until two consecutive radii agree.
int multiplicity(const HarmonicComponent& u, cplx z0, double r, double tol = 1e-6);

}  // namespace hrange
