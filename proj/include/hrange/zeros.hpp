#pragma once

#include <optional>
#include <vector>

#include "hrange/expr.hpp"
#include "hrange/range.hpp"
#include "hrange/verdict.hpp"

namespace hrange {

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Box {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

  static Box square(cplx center, double half) {
    return {center.real() - half, center.real() + half, center.imag() - half, center.imag() + half};
  }
  bool contains(cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  cplx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct ZeroCurve {
  std::vector<cplx> points;
  int component = 0;
  double arc_length = 0.0;
  bool closed = false;
};

/// Zero set of u inside the box as polylines with vertex spacing about `step`.
/// Seeds come from sign changes on a grid; curves are followed by a
/// tangent predictor and a Newton corrector, stop at the box boundary or on
/// closure, and branch at critical points lying on the zero set.
std::vector<ZeroCurve> trace_zero_set(const HarmonicComponent& u, const Box& box, double step);

/// Symmetric Hausdorff distance between two vertex sets.
double polyline_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

struct LocalStructure {
  int multiplicity = 0;
  double radius = 0.0;
  std::vector<double> ray_angles;  // sorted in [0, 2pi)
  std::vector<int> sector_signs;   // sign between ray k and ray k+1
};

LocalStructure local_structure(const HarmonicComponent& u, cplx z0, double r = 0.25);

/// Zero-set coincidence and constant sign of UV on D(0, r).
TheoremVerdict cleaning_check(const HarmonicComponent& U, const HarmonicComponent& V, double r,
                              double tol = 1e-8);

struct TractReport {
  int degree = 0;
  double radius = 0.0;
  int sign_changes = 0;
  int sign_changes_outer = 0;  // on |z| = 2R
  int components = 0;
  double dominance_radius = 0.0;
  std::vector<double> crossing_angles;
};

/// Radius beyond which the leading term of a polynomial F dominates the rest by
/// a factor 2 on every circle, so Re F and Im F change sign exactly 2n times.
double tract_dominance_radius(const HarmonicComponent& u);

TractReport tract_report(const HarmonicComponent& u, double R);

/// Sign changes of u on the circle |z - c| = r, with refined crossing angles.
std::vector<double> circle_sign_changes(const HarmonicComponent& u, cplx c, double r,
                                        int samples = 8192);

struct DependenceReport {
  double b = 0.0;
  double residual = 0.0;
  bool dependent = false;
  double a = 0.0;
  double radius = 0.0;
  bool hypothesis_holds = false;  // |u| <= a|v| on every sample with |z| > R
  bool quadrant_holds = false;    // uv >= 0 on those samples
  bool degenerate = false;
  std::size_t samples_used = 0;
  std::optional<cplx> hypothesis_witness;
  std::optional<cplx> residual_witness;
};

DependenceReport detect_dependence(const HarmonicMap& f, const RangeSample& samples, double a,
                                   double R);

}  // namespace hrange
