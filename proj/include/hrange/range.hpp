#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hrange/arcs.hpp"
#include "hrange/expr.hpp"
#include "hrange/verdict.hpp"

namespace hrange {

/// Desk-scale sample of the range f(C): points z in D(0, R) and w = f(z).
struct RangeSample {
  std::vector<cplx> z;
  std::vector<cplx> w;

  double radius = 0.0;
  int n_grid = 0;
  std::uint64_t seed = 0;
  std::size_t grid_count = 0;
  std::size_t random_count = 0;
  std::size_t refined_count = 0;
  bool refinement_truncated = false;

  /// f(0); directions are read from w - f(0).
  cplx origin_value;
  /// Lower-quartile of |w - f(0)| on the outer ring.
  double growth_scale = 0.0;
  double refine_floor = 0.0;
  double refine_resolution = 0.0;

  std::size_t size() const { return z.size(); }
};

struct SampleOptions {
  bool refine = true;
  /// Edges are bisected until image directions differ by at most this (radians).
  double resolution = kTwoPi / 720.0;
  std::size_t max_refined = 3'000'000;
};

/// Polar n x n grid, n^2 quasi-random points and deterministic bisection of
/// grid edges whose images sweep through uncovered directions.
RangeSample sample_range(const HarmonicMap& f, double R, int n_grid, std::uint64_t seed,
                         const SampleOptions& opts = {});

/// 100 when both components are polynomials, 30 otherwise.
double default_radius(const HarmonicMap& f);

struct DirectionOptions {
  int bins = 720;
  /// Increasing |w - f(0)| thresholds; empty selects the defaults.
  std::vector<double> cutoffs;
  std::size_t min_large_samples = 32;
};

struct DirectionEstimate {
  ArcSet arcs;
  std::vector<double> cutoffs;
  int bins = 0;
  /// counts[j][b]: samples in bin b beyond cutoff j.
  std::vector<std::vector<std::size_t>> counts;
  int stabilization_index = -1;
  bool stabilized = false;
  bool low_confidence = false;
  std::size_t large_samples = 0;
  cplx origin;
  double radius = 0.0;
};

/// growth_scale * {1/8, 1/4, 1/2}, floored away from zero.
std::vector<double> default_cutoffs(const RangeSample& s);

DirectionEstimate estimate_directions(const RangeSample& s, const DirectionOptions& opts = {});

/// Angles theta with both theta and theta + pi in the tol-fattened set.
ArcSet antipodal_pairs(const ArcSet& arcs, double tol);
/// One representative angle in [0, pi) per component of an antipodal set.
std::vector<double> antipodal_representatives(const ArcSet& pairs);

/// min distance from {alpha - pi/2, alpha, alpha + pi/2} to E.
double gap_margin(const ArcSet& E, double alpha);
/// Grid search (step 1e-3) for alpha whose three test points keep distance
/// >= tol from E; returns the alpha with the largest margin. None when E has
/// an antipodal pair within tol.
std::optional<double> antipodal_gap_alpha(const ArcSet& E, double tol);

struct Cone {
  enum class Kind { whole, half };
  cplx axis{1.0, 0.0};
  double half_aperture = 0.0;
  Kind kind = Kind::whole;

  bool contains_direction(double theta) const;
  bool contains(cplx w) const;
};

struct ConeNormalization {
  double alpha = 0.0;   // e^{i alpha} avoids the set together with its quarter turns
  double theta = 0.0;   // rotation sending e^{i alpha} to -1
  double phi = 0.0;     // common half-aperture of both cones
  double a = 0.0;       // cot(phi) > 1
  Cone whole;           // about +-i
  Cone half;            // about -1
  ArcSet rotated;
  std::optional<double> rho_hint;
};

/// Rotation and widest cone pair (whole cone about the imaginary axis, half
/// cone about -1) that the rotated direction set avoids by at least tol.
/// With samples, rho_hint bounds |w| over rotated samples inside the cones.
std::optional<ConeNormalization> cone_avoidance_normalize(const ArcSet& arcs, double tol,
                                                          const RangeSample* samples = nullptr);

/// The three arcs [-pi/2+a, pi/2-a], [pi/2+a, pi-a], [pi+a, 3pi/2-a].
ArcSet i_alpha_arcs(double alpha);
/// Largest alpha in [2 tol, pi/4) with arcs inside I_alpha fattened by tol;
/// the lower bound keeps the gaps of I_alpha open after fattening.
std::optional<double> fit_i_alpha(const ArcSet& arcs, double tol);

/// Upper envelope Phi(u) = max(sup{v : u + iv sampled}, 0) on u-bins.
struct PhiProfile {
  std::vector<double> edges;
  std::vector<double> phi;
  std::vector<bool> empty;
  /// Same envelope restricted to samples with |z| <= R/2.
  std::vector<double> phi_inner;
  std::vector<bool> inner_empty;
  double inner_u_min = 0.0;
  double inner_u_max = 0.0;
  double radius = 0.0;

  std::size_t bins() const { return phi.size(); }
  double center(std::size_t k) const { return 0.5 * (edges[k] + edges[k + 1]); }
};

PhiProfile phi_profile(const RangeSample& s, int bins = 512);

/// Phi(u)/|u| -> 0: dyadic tail ratios must drop by a factor 10 and the
/// envelope must already be saturated at half the sampling radius.
TheoremVerdict phi_sublinearity_check(const PhiProfile& p);

}  // namespace hrange
