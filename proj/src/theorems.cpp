#include "hrange/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hrange/arcs.hpp"
#include "hrange/circle.hpp"
#include "hrange/zeros.hpp"

namespace hrange {

namespace {

double positive_part(double x) { return x > 0 ? x : 0.0; }

struct Spread {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double peak = 0.0;

  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    peak = std::max(peak, std::abs(x));
  }
  double oscillation() const { return hi >= lo ? hi - lo : 0.0; }
  bool constant() const { return oscillation() <= 1e-9 * (1.0 + peak); }
};

// Sample farthest from a reference value, as a witness of non-constancy.
template <class F>
void witness_spread(Claim& c, const RangeSample& s, F value, double ref, const char* note) {
  std::size_t worst = 0;
  double dev = -1.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double d = std::abs(value(k) - ref);
    if (d > dev) {
      dev = d;
      worst = k;
    }
  }
  if (dev >= 0) c.fail({s.z[worst], value(worst), dev, note});
}

void require_samples(const RangeSample& s) {
  if (s.size() == 0) throw AnalysisError("range sample is empty");
}

}  // namespace

bool constant_within_tolerance(const std::vector<double>& values) {
  Spread sp;
  for (double x : values) sp.add(x);
  return sp.constant();
}

SamplingInfo sampling_info(const RangeSample& s) {
  SamplingInfo info;
  info.kind = "polar-grid+quasi-random";
  info.radius = s.radius;
  info.samples = s.size();
  info.n_grid = s.n_grid;
  info.seed = s.seed;
  return info;
}

TheoremVerdict check_lewis_region(const HarmonicMap& f, double C, const RangeSample& samples) {
  require_samples(samples);
  TheoremVerdict v;
  v.theorem = TheoremId::lewis;
  v.sampling = sampling_info(samples);
  v.params["C"] = C;
  Spread su, sv;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double u = samples.w[k].real(), w = samples.w[k].imag();
    su.add(u);
    sv.add(w);
    const double d1 = std::abs(positive_part(u) - positive_part(w)) - C;
    if (d1 > 0) v.hypothesis.fail({samples.z[k], d1 + C, d1, "|u+ - v+| > C"});
    const double d2 = -C - std::max(u, w);
    if (d2 > 0) v.hypothesis.fail({samples.z[k], std::max(u, w), d2, "max(u, v) < -C"});
  }
  v.params["oscillation_u"] = su.oscillation();
  v.params["oscillation_v"] = sv.oscillation();
  if (!su.constant())
    witness_spread(v.conclusion, samples, [&](std::size_t k) { return samples.w[k].real(); },
                   samples.origin_value.real(), "u not constant");
  if (!sv.constant())
    witness_spread(v.conclusion, samples, [&](std::size_t k) { return samples.w[k].imag(); },
                   samples.origin_value.imag(), "v not constant");
  (void)f;
  return v;
}

TheoremVerdict check_antipodal_theorem(const HarmonicMap& f, const RangeSample& samples,
                                       const DirectionEstimate& est, double tol) {
  require_samples(samples);
  TheoremVerdict v;
  v.theorem = TheoremId::thm_antipodal;
  v.sampling = sampling_info(samples);
  v.params["tol"] = tol;
  v.params["low_confidence"] = est.low_confidence ? 1.0 : 0.0;
  if (est.low_confidence) v.notes.push_back("direction estimate is low-confidence");

  const ArcSet pairs = antipodal_pairs(est.arcs, tol);
  const auto reps = antipodal_representatives(pairs);
  v.params["antipodal_pairs"] = static_cast<double>(reps.size());
  const double cut = est.cutoffs.empty() ? 0.0 : est.cutoffs.back();
  const double slack = tol + (est.bins > 0 ? kTwoPi / est.bins : 0.0);
  for (double theta : reps) {
    // the largest sample pointing along each end of the pair
    for (double dir : {theta, theta + std::numbers::pi}) {
      std::size_t best = samples.size();
      double mag = 0.0;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        const cplx d = samples.w[k] - samples.origin_value;
        const double m = std::abs(d);
        if (m < cut || m <= mag) continue;
        if (circle_distance(std::arg(d), dir) > slack) continue;
        mag = m;
        best = k;
      }
      if (best < samples.size())
        v.hypothesis.fail({samples.z[best], wrap_angle(dir), mag, "antipodal direction"});
      else
        v.hypothesis.fail({std::polar(1.0, dir), wrap_angle(dir), 0.0, "antipodal direction"});
    }
  }

  Spread su, sv;
  for (const cplx w : samples.w) {
    su.add(w.real());
    sv.add(w.imag());
  }
  if (!su.constant() || !sv.constant())
    witness_spread(v.conclusion, samples,
                   [&](std::size_t k) { return std::abs(samples.w[k] - samples.origin_value); }, 0.0,
                   "f not constant");
  (void)f;
  return v;
}

TheoremVerdict check_halfplane_theorem(const HarmonicMap& f, double alpha,
                                       const DirectionEstimate& est, const RangeSample& samples,
                                       double tol) {
  require_samples(samples);
  if (tol <= 0) tol = 2.0 * kTwoPi / std::max(est.bins, 1);
  TheoremVerdict v;
  v.theorem = TheoremId::thm_halfplane;
  v.sampling = sampling_info(samples);
  v.params["alpha"] = alpha;
  v.params["tol"] = tol;

  const double half = std::numbers::pi / 2;
  const ArcSet H = ArcSet::arc(alpha - half, std::numbers::pi);
  if (!est.arcs.subset_of(H, tol)) {
    const double cut = est.cutoffs.empty() ? 0.0 : est.cutoffs.back();
    std::size_t worst = samples.size();
    double far = tol;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const cplx d = samples.w[k] - samples.origin_value;
      if (std::abs(d) < cut) continue;
      const double dist = H.distance(std::arg(d));
      if (dist > far) {
        far = dist;
        worst = k;
      }
    }
    if (worst < samples.size())
      v.hypothesis.fail({samples.z[worst], wrap_angle(std::arg(samples.w[worst] - samples.origin_value)),
                         far, "direction outside the half circle"});
    else
      v.hypothesis.fail({std::polar(1.0, alpha + std::numbers::pi), wrap_angle(alpha + std::numbers::pi),
                         0.0, "direction set leaves the half circle"});
  }
  const ArcSet ends = ArcSet::points({alpha - half, alpha + half});
  const bool boundary = v.hypothesis.holds && !est.arcs.empty() && est.arcs.subset_of(ends, tol);
  v.params["boundary"] = boundary ? 1.0 : 0.0;
  if (boundary) v.notes.push_back("directions lie on the endpoints of the closed half circle");

  const double c = std::cos(alpha), s = std::sin(alpha);
  auto lin = [&](std::size_t k) { return c * samples.w[k].real() + s * samples.w[k].imag(); };
  std::vector<double> vals(samples.size());
  Spread sp;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    vals[k] = lin(k);
    sp.add(vals[k]);
  }
  auto mid = vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2);
  std::nth_element(vals.begin(), mid, vals.end());
  const double median = *mid;
  v.params["oscillation"] = sp.oscillation();
  v.params["median"] = median;
  if (!sp.constant())
    witness_spread(v.conclusion, samples, lin, median, "cos(alpha) u + sin(alpha) v not constant");
  (void)f;
  return v;
}

TheoremVerdict check_cor_alpha(const HarmonicMap& f, double a, double alpha, double b,
                               const RangeSample& samples) {
  require_samples(samples);
  if (!(alpha >= 0 && alpha < 1)) throw AnalysisError("exponent alpha must lie in [0, 1)");
  TheoremVerdict v;
  v.theorem = TheoremId::cor_alpha;
  v.sampling = sampling_info(samples);
  v.params["a"] = a;
  v.params["alpha"] = alpha;
  v.params["b"] = b;
  Spread sv;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double u = samples.w[k].real(), w = samples.w[k].imag();
    sv.add(w);
    const double rhs = a * std::pow(std::abs(u), alpha) + b;
    if (!holds_with_slack(w, rhs)) v.hypothesis.fail({samples.z[k], w, w - rhs, "v > a|u|^alpha + b"});
  }
  v.params["oscillation_v"] = sv.oscillation();
  if (!sv.constant())
    witness_spread(v.conclusion, samples, [&](std::size_t k) { return samples.w[k].imag(); },
                   samples.origin_value.imag(), "v not constant");
  (void)f;
  return v;
}

TheoremVerdict check_murdoch_kuran(const HarmonicMap& f, double a, double R,
                                   const RangeSample& samples) {
  require_samples(samples);
  TheoremVerdict v;
  v.theorem = TheoremId::thm_murdoch_kuran;
  v.sampling = sampling_info(samples);
  v.params["a"] = a;
  v.params["R"] = R;
  if (!f.u.polynomial_degree() || f.u.is_constant()) {
    v.hypothesis.applicable = false;
    v.hypothesis.holds = false;
    v.hypothesis.add({0.0, 0.0, 0.0, "u is not a nonconstant harmonic polynomial"});
    v.notes.push_back("u is not a nonconstant harmonic polynomial");
    return v;
  }
  const DependenceReport d = detect_dependence(f, samples, a, R);
  v.params["samples_used"] = static_cast<double>(d.samples_used);
  if (!d.hypothesis_holds) {
    const cplx z = d.hypothesis_witness.value_or(0.0);
    const cplx w = f(z);
    v.hypothesis.fail({z, std::abs(w.real()) - a * std::abs(w.imag()),
                       std::abs(w.real()) - a * std::abs(w.imag()), "|u| > a|v|"});
  }
  if (d.degenerate) {
    v.notes.push_back("v vanishes on the samples");
    v.conclusion.fail({0.0, 0.0, 0.0, "v vanishes on the samples"});
    return v;
  }
  v.params["b"] = d.b;
  v.params["residual"] = d.residual;
  if (!d.dependent) {
    const cplx z = d.residual_witness.value_or(0.0);
    const cplx w = f(z);
    v.conclusion.fail({z, w.real() - d.b * w.imag(), d.residual, "u != b v"});
  }

  // principal axis through the origin
  double suu = 0.0, svv = 0.0, suv = 0.0, wmax = 0.0;
  for (const cplx w : samples.w) {
    suu += w.real() * w.real();
    svv += w.imag() * w.imag();
    suv += w.real() * w.imag();
    wmax = std::max(wmax, std::abs(w));
  }
  const double phi = 0.5 * std::atan2(2.0 * suv, suu - svv);
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double dist = std::abs(-samples.w[k].real() * std::sin(phi) + samples.w[k].imag() * std::cos(phi));
    if (dist > worst) {
      worst = dist;
      at = k;
    }
  }
  const double line_residual = wmax > 0 ? worst / wmax : 0.0;
  v.params["line_angle"] = wrap_angle(phi);
  v.params["line_residual"] = line_residual;
  if (line_residual > 1e-6)
    v.conclusion.fail({samples.z[at], worst, line_residual, "range leaves the line through 0"});
  return v;
}

TheoremVerdict check_log2_inequalities(const std::vector<cplx>& zs) {
  TheoremVerdict v;
  v.theorem = TheoremId::ineq_log2;
  v.sampling.kind = "points";
  v.sampling.samples = zs.size();
  const double log2 = std::numbers::ln2;
  constexpr double slack = 1e-12;
  double max_diff = 0.0, min_max = std::numeric_limits<double>::infinity();
  for (const cplx z : zs) {
    const double r0 = std::abs(z), r1 = std::abs(z - 1.0);
    if (r0 < 1e-12 || r1 < 1e-12) throw AnalysisError("sample point too close to 0 or 1", z);
    const double diff = std::abs(positive_part(std::log(r0)) - positive_part(std::log(r1)));
    const double mx = std::max(std::log(r0), std::log(r1));
    max_diff = std::max(max_diff, diff);
    min_max = std::min(min_max, mx);
    if (diff > log2 + slack) v.conclusion.fail({z, diff, diff - log2, "|log+|z| - log+|z-1|| > log 2"});
    if (mx < -log2 - slack) v.conclusion.fail({z, mx, -log2 - mx, "max(log|z|, log|z-1|) < -log 2"});
  }
  v.params["max_log_plus_difference"] = max_diff;
  if (!zs.empty()) v.params["min_log_max"] = min_max;
  v.params["slack"] = slack;
  return v;
}

}  // namespace hrange
