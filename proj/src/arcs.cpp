#include "hrange/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrange {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double circle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

ArcSet ArcSet::normalized(std::vector<Interval> iv) {
  for (auto& x : iv) {
    x.lo = std::clamp(x.lo, 0.0, kTwoPi);
    x.hi = std::clamp(x.hi, 0.0, kTwoPi);
  }
  // 0 and 2pi are the same point; keep both copies so that interval-wise
  // operations see the seam from either side.
  const bool at_start = std::any_of(iv.begin(), iv.end(), [](const Interval& x) { return x.lo == 0.0; });
  const bool at_end = std::any_of(iv.begin(), iv.end(), [](const Interval& x) { return x.hi == kTwoPi; });
  if (at_start && !at_end) iv.push_back({kTwoPi, kTwoPi});
  if (at_end && !at_start) iv.push_back({0.0, 0.0});

  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  ArcSet out;
  for (const auto& x : iv) {
    if (!out.iv_.empty() && x.lo <= out.iv_.back().hi) {
      out.iv_.back().hi = std::max(out.iv_.back().hi, x.hi);
    } else {
      out.iv_.push_back(x);
    }
  }
  return out;
}

ArcSet ArcSet::full() { return normalized({{0.0, kTwoPi}}); }

ArcSet ArcSet::point(double theta) {
  const double t = wrap_angle(theta);
  return normalized({{t, t}});
}

ArcSet ArcSet::arc(double from, double length) { return from_arcs({Arc{from, length}}); }

ArcSet ArcSet::between(double from, double to) {
  const double a = wrap_angle(from);
  double len = wrap_angle(to) - a;
  if (len < 0) len += kTwoPi;
  return from_arcs({Arc{a, len}});
}

ArcSet ArcSet::points(const std::vector<double>& thetas) {
  std::vector<Interval> iv;
  for (double t : thetas) iv.push_back({wrap_angle(t), wrap_angle(t)});
  return normalized(std::move(iv));
}

ArcSet ArcSet::from_arcs(const std::vector<Arc>& arcs) {
  std::vector<Interval> iv;
  for (const auto& a : arcs) {
    if (!(a.length >= 0)) continue;
    if (a.length >= kTwoPi) return full();
    const double s = wrap_angle(a.start);
    const double e = s + a.length;
    if (e <= kTwoPi) {
      iv.push_back({s, e});
    } else {
      iv.push_back({s, kTwoPi});
      iv.push_back({0.0, e - kTwoPi});
    }
  }
  return normalized(std::move(iv));
}

std::vector<Arc> ArcSet::components() const {
  std::vector<Arc> out;
  if (iv_.empty()) return out;
  if (is_full()) return {Arc{0.0, kTwoPi}};
  std::size_t first = 0, last = iv_.size();
  const bool wraps = iv_.size() > 1 && iv_.front().lo == 0.0 && iv_.back().hi == kTwoPi;
  if (wraps) {
    ++first;
    --last;
  }
  for (std::size_t k = first; k < last; ++k) out.push_back({iv_[k].lo, iv_[k].hi - iv_[k].lo});
  if (wraps) {
    const Interval& tail = iv_.back();
    out.push_back({wrap_angle(tail.lo), (kTwoPi - tail.lo) + iv_.front().hi});
  }
  std::sort(out.begin(), out.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  return out;
}

bool ArcSet::is_full() const {
  return iv_.size() == 1 && iv_[0].lo == 0.0 && iv_[0].hi == kTwoPi;
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const auto& x : iv_) m += x.hi - x.lo;
  return std::min(m, kTwoPi);
}

bool ArcSet::contains(double theta, double tol) const { return distance(theta) <= tol; }

double ArcSet::distance(double theta) const {
  if (iv_.empty()) return std::numeric_limits<double>::infinity();
  const double t = wrap_angle(theta);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : iv_) {
    if (t >= x.lo && t <= x.hi) return 0.0;
    best = std::min({best, circle_distance(t, x.lo), circle_distance(t, x.hi)});
  }
  return best;
}

namespace {

// sup over a in A of dist(a, B)
double directed_hausdorff(const ArcSet& a, const ArcSet& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  if (b.is_full()) return 0.0;
  double worst = 0.0;
  for (const auto& x : a.intervals()) worst = std::max({worst, b.distance(x.lo), b.distance(x.hi)});
  // dist(., B) peaks at the middle of each gap of B
  const auto comps = b.components();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Arc& cur = comps[k];
    const Arc& next = comps[(k + 1) % comps.size()];
    double gap = wrap_angle(next.start - cur.end());
    if (comps.size() == 1) gap = kTwoPi - cur.length;
    const double mid = cur.end() + 0.5 * gap;
    if (a.distance(mid) == 0.0) worst = std::max(worst, b.distance(mid));
  }
  return worst;
}

}  // namespace

bool ArcSet::subset_of(const ArcSet& other, double tol) const {
  return directed_hausdorff(*this, other) <= tol;
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  std::vector<Interval> iv = iv_;
  iv.insert(iv.end(), other.iv_.begin(), other.iv_.end());
  return normalized(std::move(iv));
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    const Interval& a = iv_[i];
    const Interval& b = other.iv_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return normalized(std::move(out));
}

ArcSet ArcSet::rotate(double phi) const {
  if (is_full()) return *this;
  auto comps = components();
  for (auto& c : comps) c.start += phi;
  return from_arcs(comps);
}

ArcSet ArcSet::fatten(double eps) const {
  if (iv_.empty() || eps <= 0) return *this;
  auto comps = components();
  for (auto& c : comps) {
    c.start -= eps;
    c.length += 2.0 * eps;
  }
  return from_arcs(comps);
}

ArcSet ArcSet::complement() const {
  if (iv_.empty()) return full();
  if (is_full()) return {};
  // gaps between stored intervals, with endpoints copied exactly
  std::vector<Interval> gaps;
  double prev = 0.0;
  for (const auto& x : iv_) {
    if (x.lo > prev) gaps.push_back({prev, x.lo});
    prev = std::max(prev, x.hi);
  }
  if (prev < kTwoPi) gaps.push_back({prev, kTwoPi});
  return normalized(std::move(gaps));
}

double hausdorff(const ArcSet& a, const ArcSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace hrange
