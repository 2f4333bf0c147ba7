#include "hrange/range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrange/parallel.hpp"
#include "hrange/sampling.hpp"

namespace hrange {

namespace {

constexpr double kPi = std::numbers::pi;

struct EdgePoint {
  double t;
  cplx z;
  cplx w;
};

struct Edge {
  enum class Kind { ring, radial } kind;
  double radius_or_angle;  // ring: radius, radial: angle
  EdgePoint a, b;
};

cplx edge_point(const Edge& e, double t) {
  if (e.kind == Edge::Kind::ring) return std::polar(e.radius_or_angle, t);
  return std::polar(t, e.radius_or_angle);
}

// Bisects an edge while both image endpoints stay beyond the floor and their
// directions (about w0) differ by more than the resolution.
std::vector<EdgePoint> refine_edge(const HarmonicMap& f, const Edge& e, cplx w0, double floor,
                                   double resolution, std::size_t cap) {
  std::vector<EdgePoint> out;
  struct Job {
    EdgePoint a, b;
    int depth;
  };
  std::vector<Job> stack{{e.a, e.b, 0}};
  while (!stack.empty() && out.size() < cap) {
    const Job job = stack.back();
    stack.pop_back();
    const cplx da = job.a.w - w0, db = job.b.w - w0;
    if (job.depth >= 44) continue;
    if (!(std::abs(da) >= floor && std::abs(db) >= floor)) continue;
    if (!(std::abs(std::arg(db * std::conj(da))) > resolution)) continue;
    const double tm = 0.5 * (job.a.t + job.b.t);
    if (!(std::abs(job.b.t - job.a.t) > 8.0 * std::numeric_limits<double>::epsilon() *
                                            (1.0 + std::abs(tm))))
      continue;
    const cplx zm = edge_point(e, tm);
    const EdgePoint m{tm, zm, f(zm)};
    if (!std::isfinite(m.w.real()) || !std::isfinite(m.w.imag())) continue;
    out.push_back(m);
    // right half pushed first so the left half is explored first
    stack.push_back({m, job.b, job.depth + 1});
    stack.push_back({job.a, m, job.depth + 1});
  }
  return out;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  return v[k];
}

}  // namespace

double default_radius(const HarmonicMap& f) {
  return f.u.polynomial_degree() && f.v.polynomial_degree() ? 100.0 : 30.0;
}

RangeSample sample_range(const HarmonicMap& f, double R, int n_grid, std::uint64_t seed,
                         const SampleOptions& opts) {
  if (!(R > 0)) throw AnalysisError("sampling radius must be positive");
  if (n_grid < 64) throw AnalysisError("n_grid must be at least 64");
  const auto n = static_cast<std::size_t>(n_grid);

  RangeSample s;
  s.radius = R;
  s.n_grid = n_grid;
  s.seed = seed;
  s.grid_count = 1 + n * n;
  s.random_count = n * n;
  s.refine_resolution = opts.resolution;

  const std::size_t base = s.grid_count + s.random_count;
  s.z.resize(base);
  s.w.resize(base);
  s.z[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = R * static_cast<double>(i + 1) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
      s.z[1 + i * n + j] = std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  }
  const auto rnd = quasi_random_disc(s.random_count, R, seed);
  std::copy(rnd.begin(), rnd.end(), s.z.begin() + static_cast<std::ptrdiff_t>(s.grid_count));
  parallel_for(base, [&](std::size_t k) { s.w[k] = f(s.z[k]); });

  s.origin_value = s.w[0];
  std::vector<double> ring(n);
  for (std::size_t j = 0; j < n; ++j) ring[j] = std::abs(s.w[1 + (n - 1) * n + j] - s.origin_value);
  s.growth_scale = quantile(ring, 0.25);
  s.refine_floor = s.growth_scale / 16.0;

  if (!opts.refine || !(s.growth_scale > 0) || !std::isfinite(s.growth_scale)) return s;

  auto grid_point = [&](std::size_t i, std::size_t j, bool ring_param) {
    const std::size_t k = 1 + i * n + j;
    const double t = ring_param ? kTwoPi * static_cast<double>(j) / static_cast<double>(n)
                                : R * static_cast<double>(i + 1) / static_cast<double>(n);
    return EdgePoint{t, s.z[k], s.w[k]};
  };
  std::vector<Edge> edges;
  edges.reserve(2 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = R * static_cast<double>(i + 1) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
      EdgePoint a = grid_point(i, j, true);
      EdgePoint b = grid_point(i, (j + 1) % n, true);
      if (j + 1 == n) b.t = kTwoPi;
      edges.push_back({Edge::Kind::ring, r, a, b});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    edges.push_back({Edge::Kind::radial, theta, EdgePoint{0.0, s.z[0], s.w[0]},
                     grid_point(0, j, false)});
    for (std::size_t i = 0; i + 1 < n; ++i)
      edges.push_back({Edge::Kind::radial, theta, grid_point(i, j, false),
                       grid_point(i + 1, j, false)});
  }

  constexpr std::size_t kPerEdgeCap = 8192;
  std::vector<std::vector<EdgePoint>> extra(edges.size());
  parallel_for(edges.size(), [&](std::size_t k) {
    extra[k] = refine_edge(f, edges[k], s.origin_value, s.refine_floor, opts.resolution,
                           kPerEdgeCap);
  });
  for (const auto& pts : extra) {
    if (pts.size() >= kPerEdgeCap) s.refinement_truncated = true;
    for (const auto& p : pts) {
      if (s.refined_count >= opts.max_refined) {
        s.refinement_truncated = true;
        break;
      }
      s.z.push_back(p.z);
      s.w.push_back(p.w);
      ++s.refined_count;
    }
  }
  return s;
}

std::vector<double> default_cutoffs(const RangeSample& s) {
  const double floor = 1e-9 * (1.0 + std::abs(s.origin_value));
  std::vector<double> c;
  for (double q : {0.125, 0.25, 0.5}) c.push_back(std::max(q * s.growth_scale, floor));
  return c;
}

DirectionEstimate estimate_directions(const RangeSample& s, const DirectionOptions& opts) {
  if (opts.bins < 90) throw AnalysisError("direction estimation needs at least 90 bins");
  DirectionEstimate est;
  est.bins = opts.bins;
  est.cutoffs = opts.cutoffs.empty() ? default_cutoffs(s) : opts.cutoffs;
  if (!std::is_sorted(est.cutoffs.begin(), est.cutoffs.end()))
    throw AnalysisError("direction cutoffs must be increasing");
  est.origin = s.origin_value;
  est.radius = s.radius;

  const auto nb = static_cast<std::size_t>(opts.bins);
  const std::size_t nc = est.cutoffs.size();
  est.counts.assign(nc, std::vector<std::size_t>(nb, 0));
  std::vector<double> lo(nb, std::numeric_limits<double>::infinity());
  std::vector<double> hi(nb, -std::numeric_limits<double>::infinity());
  const double width = kTwoPi / opts.bins;

  for (std::size_t k = 0; k < s.size(); ++k) {
    const cplx d = s.w[k] - s.origin_value;
    const double r = std::abs(d);
    if (!std::isfinite(r)) continue;
    const double theta = wrap_angle(std::arg(d));
    const auto b = std::min(nb - 1, static_cast<std::size_t>(theta / width));
    for (std::size_t j = 0; j < nc; ++j) {
      if (!(r >= est.cutoffs[j])) break;
      ++est.counts[j][b];
      if (j + 1 == nc) {
        lo[b] = std::min(lo[b], theta);
        hi[b] = std::max(hi[b], theta);
        ++est.large_samples;
      }
    }
  }
  est.low_confidence = est.large_samples < opts.min_large_samples;
  if (nc == 0) return est;

  auto occupied = [&](std::size_t j) {
    std::vector<bool> o(nb);
    for (std::size_t b = 0; b < nb; ++b) o[b] = est.counts[j][b] > 0;
    return o;
  };
  for (std::size_t j = 0; j + 1 < nc; ++j) {
    if (occupied(j) == occupied(j + 1)) {
      est.stabilization_index = static_cast<int>(j);
      est.stabilized = true;
      break;
    }
  }
  if (nc == 1) {
    est.stabilization_index = 0;
    est.stabilized = true;
  }

  const auto occ = occupied(nc - 1);
  const auto first_free = std::find(occ.begin(), occ.end(), false);
  if (first_free == occ.end()) {
    est.arcs = ArcSet::full();
    return est;
  }
  const auto start = static_cast<std::size_t>(first_free - occ.begin());
  std::vector<Arc> arcs;
  for (std::size_t step = 0; step < nb;) {
    const std::size_t b = (start + step) % nb;
    if (!occ[b]) {
      ++step;
      continue;
    }
    // run of occupied bins beginning at b
    const double a0 = lo[b];
    double a1 = hi[b];
    while (step < nb && occ[(start + step) % nb]) {
      const std::size_t c = (start + step) % nb;
      a1 = hi[c] + (c < b ? kTwoPi : 0.0);
      ++step;
    }
    arcs.push_back({a0 - width, (a1 - a0) + 2.0 * width});
  }
  est.arcs = ArcSet::from_arcs(arcs);
  return est;
}

ArcSet antipodal_pairs(const ArcSet& arcs, double tol) {
  const ArcSet fat = arcs.fatten(tol);
  return fat.intersect(fat.rotate(kPi));
}

std::vector<double> antipodal_representatives(const ArcSet& pairs) {
  std::vector<double> out;
  for (const auto& c : pairs.components()) {
    const double t = std::fmod(wrap_angle(c.mid()), kPi);
    if (std::none_of(out.begin(), out.end(),
                     [&](double x) { return circle_distance(2 * x, 2 * t) < 1e-9; }))
      out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double gap_margin(const ArcSet& E, double alpha) {
  return std::min({E.distance(alpha), E.distance(alpha + 0.5 * kPi), E.distance(alpha - 0.5 * kPi)});
}

std::optional<double> antipodal_gap_alpha(const ArcSet& E, double tol) {
  if (E.empty()) return 0.0;
  if (!antipodal_pairs(E, tol).empty()) return std::nullopt;
  double best_alpha = 0.0;
  double best = -1.0;
  const int steps = static_cast<int>(std::ceil(kTwoPi / 1e-3));
  for (int k = 0; k < steps; ++k) {
    const double alpha = k * 1e-3;
    const double m = gap_margin(E, alpha);
    if (m > best) {
      best = m;
      best_alpha = alpha;
    }
  }
  if (!(best > 0) || best < tol) return std::nullopt;
  return best_alpha;
}

bool Cone::contains_direction(double theta) const {
  const double axis_angle = std::arg(axis);
  if (circle_distance(theta, axis_angle) <= half_aperture) return true;
  return kind == Kind::whole && circle_distance(theta, axis_angle + kPi) <= half_aperture;
}

bool Cone::contains(cplx w) const { return w == cplx{} || contains_direction(std::arg(w)); }

std::optional<ConeNormalization> cone_avoidance_normalize(const ArcSet& arcs, double tol,
                                                          const RangeSample* samples) {
  const auto alpha = antipodal_gap_alpha(arcs, tol);
  if (!alpha) return std::nullopt;
  ConeNormalization n;
  n.alpha = *alpha;
  n.theta = wrap_angle(kPi - *alpha);
  n.rotated = arcs.rotate(n.theta);
  const double room = std::min({n.rotated.distance(kPi), n.rotated.distance(0.5 * kPi),
                                n.rotated.distance(1.5 * kPi)}) -
                      tol;
  n.phi = std::min(room, 0.25 * kPi - 1e-6);
  if (!(n.phi > 0)) return std::nullopt;
  n.a = 1.0 / std::tan(n.phi);
  n.whole = Cone{cplx{0.0, 1.0}, n.phi, Cone::Kind::whole};
  n.half = Cone{cplx{-1.0, 0.0}, n.phi, Cone::Kind::half};
  if (samples) {
    const cplx rot = std::polar(1.0, n.theta);
    double rho = 0.0;
    for (const cplx w : samples->w) {
      const cplx wr = rot * w;
      if (n.whole.contains(wr) || n.half.contains(wr)) rho = std::max(rho, std::abs(wr));
    }
    n.rho_hint = rho;
  }
  return n;
}

ArcSet i_alpha_arcs(double alpha) {
  return ArcSet::between(-0.5 * kPi + alpha, 0.5 * kPi - alpha)
      .unite(ArcSet::between(0.5 * kPi + alpha, kPi - alpha))
      .unite(ArcSet::between(kPi + alpha, 1.5 * kPi - alpha));
}

std::optional<double> fit_i_alpha(const ArcSet& arcs, double tol) {
  auto fits = [&](double a) { return arcs.subset_of(i_alpha_arcs(a), tol); };
  double lo = std::max(2.0 * tol, 1e-9);
  double hi = 0.25 * kPi - 1e-9;
  if (lo >= hi) return std::nullopt;
  if (!fits(lo)) return std::nullopt;
  if (fits(hi)) return hi;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (fits(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

PhiProfile phi_profile(const RangeSample& s, int bins) {
  if (bins < 1) throw AnalysisError("phi profile needs at least one bin");
  if (s.size() == 0) throw AnalysisError("phi profile needs samples");
  PhiProfile p;
  p.radius = s.radius;
  double umin = std::numeric_limits<double>::infinity();
  double umax = -umin;
  p.inner_u_min = umin;
  p.inner_u_max = umax;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double u = s.w[k].real();
    if (!std::isfinite(u)) continue;
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    if (std::abs(s.z[k]) <= 0.5 * s.radius) {
      p.inner_u_min = std::min(p.inner_u_min, u);
      p.inner_u_max = std::max(p.inner_u_max, u);
    }
  }
  if (!(umax > umin)) {
    umin -= 0.5;
    umax += 0.5;
  }
  const auto nb = static_cast<std::size_t>(bins);
  p.edges.resize(nb + 1);
  for (std::size_t k = 0; k <= nb; ++k)
    p.edges[k] = umin + (umax - umin) * static_cast<double>(k) / static_cast<double>(nb);
  p.phi.assign(nb, 0.0);
  p.phi_inner.assign(nb, 0.0);
  p.empty.assign(nb, true);
  p.inner_empty.assign(nb, true);
  const double width = (umax - umin) / static_cast<double>(nb);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double u = s.w[k].real();
    const double v = s.w[k].imag();
    if (!std::isfinite(u) || !std::isfinite(v)) continue;
    const auto b = std::min(nb - 1, static_cast<std::size_t>((u - umin) / width));
    p.empty[b] = false;
    p.phi[b] = std::max(p.phi[b], v);
    if (std::abs(s.z[k]) <= 0.5 * s.radius) {
      p.inner_empty[b] = false;
      p.phi_inner[b] = std::max(p.phi_inner[b], v);
    }
  }
  return p;
}

TheoremVerdict phi_sublinearity_check(const PhiProfile& p) {
  TheoremVerdict v;
  v.theorem = TheoremId::phi_sublinear;
  v.hypothesis.applicable = false;
  v.notes.push_back("conclusion only: Phi(u)/|u| -> 0 read off the sampled envelope");
  v.sampling.kind = "phi-profile";
  v.sampling.radius = p.radius;

  const double u_in = std::max(std::abs(p.inner_u_min), std::abs(p.inner_u_max));
  std::vector<std::size_t> valid;
  for (std::size_t k = 0; k < p.bins(); ++k) {
    const double c = p.center(k);
    if (!p.empty[k] && c >= p.inner_u_min && c <= p.inner_u_max && c != 0.0) valid.push_back(k);
  }
  if (valid.empty()) throw AnalysisError("insufficient-span: no populated bins");
  double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
  for (auto k : valid) {
    cmin = std::min(cmin, std::abs(p.center(k)));
    cmax = std::max(cmax, std::abs(p.center(k)));
  }
  const double span = cmax / cmin;
  if (!(span >= 100.0)) throw AnalysisError("insufficient-span: |u| covers less than two decades");

  auto tail = [&](double u0, std::size_t* arg) {
    double t = 0.0;
    for (auto k : valid) {
      const double c = std::abs(p.center(k));
      if (c < u0) continue;
      const double r = p.phi[k] / c;
      if (r > t) {
        t = r;
        if (arg) *arg = k;
      }
    }
    return t;
  };
  double u0 = 0.5 * u_in;
  int levels = 0;
  while (u0 * 0.5 >= cmin) {
    u0 *= 0.5;
    ++levels;
  }
  const double initial = tail(u0, nullptr);
  std::size_t worst = valid.front();
  const double final_ratio = tail(0.5 * u_in, &worst);
  v.params["u_inner"] = u_in;
  v.params["span"] = span;
  v.params["dyadic_levels"] = levels + 1;
  v.params["initial_ratio"] = initial;
  v.params["final_ratio"] = final_ratio;
  v.params["bins"] = static_cast<double>(p.bins());

  if (!(initial == 0.0 && final_ratio == 0.0) && !(final_ratio <= 0.1 * initial)) {
    const double c = p.center(worst);
    v.conclusion.fail({cplx{c, p.phi[worst]}, final_ratio, final_ratio,
                       "tail ratio Phi(u)/|u| does not decay"});
  }
  for (auto k : valid) {
    const double c = p.center(k);
    if (std::abs(c) > 0.9 * u_in || p.inner_empty[k]) continue;
    const double excess = p.phi[k] - p.phi_inner[k] - 0.1 * (p.phi_inner[k] + std::abs(c));
    if (excess > 0)
      v.conclusion.fail({cplx{c, p.phi[k]}, p.phi[k] - p.phi_inner[k], excess,
                         "envelope still growing with the sampling radius"});
  }
  return v;
}

}  // namespace hrange
