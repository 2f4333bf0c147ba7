#pragma once

#include <numbers>
#include <vector>

namespace hrange {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Angle reduced to [0, 2pi).
double wrap_angle(double theta);
/// Length of the shorter arc between two angles, in [0, pi].
double circle_distance(double a, double b);

/// Closed interval of angles inside [0, 2pi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Arc given by its counter-clockwise start and its length (possibly across 0).
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  double mid() const { return start + 0.5 * length; }
};

/// Finite union of closed arcs on the unit circle.
///
/// Stored as sorted, disjoint closed intervals of [0, 2pi]; an arc through
/// angle 0 is held as two intervals touching the seam.
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet full();
  static ArcSet point(double theta);
  /// Counter-clockwise arc from `from` of the given length.
  static ArcSet arc(double from, double length);
  /// Arc between two angles, traversed counter-clockwise from `from` to `to`.
  static ArcSet between(double from, double to);
  static ArcSet points(const std::vector<double>& thetas);
  static ArcSet from_arcs(const std::vector<Arc>& arcs);

  const std::vector<Interval>& intervals() const { return iv_; }
  /// Maximal arcs with seam pieces joined.
  std::vector<Arc> components() const;

  bool empty() const { return iv_.empty(); }
  bool is_full() const;
  double measure() const;

  bool contains(double theta, double tol = 0.0) const;
  /// Circle distance from theta to the set (infinity when empty).
  double distance(double theta) const;
  /// True when every point of the set lies within tol of `other`.
  bool subset_of(const ArcSet& other, double tol = 0.0) const;

  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;
  ArcSet rotate(double phi) const;
  ArcSet fatten(double eps) const;
  ArcSet complement() const;

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  static ArcSet normalized(std::vector<Interval> iv);
  std::vector<Interval> iv_;
};

/// Hausdorff distance between two closed subsets of the circle, measured
/// along the circle. Zero for two empty sets, infinity if exactly one is empty.
double hausdorff(const ArcSet& a, const ArcSet& b);

}  // namespace hrange
