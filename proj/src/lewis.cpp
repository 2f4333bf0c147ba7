#include "hrange/lewis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "hrange/circle.hpp"
#include "hrange/parallel.hpp"
#include "hrange/range.hpp"

namespace hrange {

namespace {

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

cplx bisect_segment(const HarmonicComponent& u, cplx p, cplx q, double up) {
  double a = 0.0, b = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double um = u(p + m * (q - p));
    if (um == 0.0) return p + m * (q - p);
    if (sgn(um) == sgn(up)) {
      a = m;
      up = um;
    } else {
      b = m;
    }
  }
  return p + 0.5 * (a + b) * (q - p);
}

cplx newton_polish(const HarmonicComponent& u, cplx z) {
  for (int k = 0; k < 30; ++k) {
    const double val = u(z);
    if (val == 0.0) break;
    const cplx g = u.gradient(z);
    if (!(std::norm(g) > 0)) break;
    const cplx dz = val * g / std::norm(g);
    z -= dz;
    if (std::abs(dz) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Points spaced evenly by arc length along the part of a polyline inside D(0, R).
std::vector<cplx> centers_on(const ZeroCurve& c, double R, int count) {
  std::vector<std::pair<cplx, cplx>> segs;
  double total = 0.0;
  for (std::size_t k = 1; k < c.points.size(); ++k) {
    const cplx a = c.points[k - 1], b = c.points[k];
    if (std::abs(a) < R && std::abs(b) < R) {
      segs.push_back({a, b});
      total += std::abs(b - a);
    }
  }
  std::vector<cplx> out;
  if (segs.empty()) {
    for (const cplx p : c.points)
      if (std::abs(p) < R) out.push_back(p);
    if (out.size() > 1) out.resize(1);
    return out;
  }
  std::size_t s = 0;
  double acc = 0.0;
  for (int k = 0; k < count; ++k) {
    const double target = (k + 0.5) / count * total;
    while (s + 1 < segs.size() && acc + std::abs(segs[s].second - segs[s].first) < target) {
      acc += std::abs(segs[s].second - segs[s].first);
      ++s;
    }
    const double len = std::abs(segs[s].second - segs[s].first);
    const double t = len > 0 ? std::clamp((target - acc) / len, 0.0, 1.0) : 0.0;
    out.push_back(segs[s].first + t * (segs[s].second - segs[s].first));
  }
  return out;
}

struct Candidate {
  cplx center;
  double radius;
  double score;
};

bool better(const Candidate& a, const Candidate& b) {
  return std::tie(a.score, a.radius) < std::tie(b.score, b.radius) ||
         (a.score == b.score && a.radius == b.radius &&
          std::make_pair(a.center.real(), a.center.imag()) <
              std::make_pair(b.center.real(), b.center.imag()));
}

}  // namespace

cplx find_zero(const HarmonicComponent& u, const Box& box) {
  constexpr int n = 64;
  auto at = [&](int i, int j) {
    return cplx{box.x0 + box.width() * i / n, box.y0 + box.height() * j / n};
  };
  std::vector<double> val((n + 1) * (n + 1));
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j * (n + 1) + i); };
  double osc = 0.0;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      val[idx(i, j)] = u(at(i, j));
      osc = std::max(osc, std::abs(val[idx(i, j)]));
    }
  const cplx mid = box.center();
  double best = std::numeric_limits<double>::infinity();
  std::optional<std::tuple<cplx, cplx, double>> pick;
  auto consider = [&](cplx p, cplx q, double up, double uq) {
    if (up == 0.0) q = p;
    else if (uq == 0.0) p = q;
    else if (sgn(up) == sgn(uq)) return;
    const double d = std::abs(0.5 * (p + q) - mid);
    if (d < best) {
      best = d;
      pick = {p, q, up};
    }
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      if (i < n) consider(at(i, j), at(i + 1, j), val[idx(i, j)], val[idx(i + 1, j)]);
      if (j < n) consider(at(i, j), at(i, j + 1), val[idx(i, j)], val[idx(i, j + 1)]);
    }
  if (!pick) throw AnalysisError("no sign change of u in the search box", mid);
  const auto [p, q, up] = *pick;
  const cplx z = p == q ? p : bisect_segment(u, p, q, up);
  const cplx zp = newton_polish(u, z);
  const double cell = std::max(box.width(), box.height()) / n;
  if (box.contains(zp) && std::abs(zp - z) <= cell && std::abs(u(zp)) < std::abs(u(z))) return zp;
  return z;
}

LewisDisc lewis_disc_at(const HarmonicComponent& u, cplx center, double r, double R) {
  LewisDisc d;
  d.center = center;
  d.radius = r;
  d.search_radius = R;
  d.M = circle_max_abs(u, center, r).value;
  const double mu = circle_max(u, center, r).value;
  const double m34 = circle_max(u, center, 0.75 * r).value;
  const double m0 = circle_max(u, 0.0, 0.5 * R).value;
  d.doubling_ratio = m34 > 0 ? d.M / m34 : std::numeric_limits<double>::infinity();
  d.growth_ratio = mu > 0 ? m0 / mu : std::numeric_limits<double>::infinity();
  d.u_at_center = u(center);
  return d;
}

LewisDisc lewis_disc_search(const HarmonicComponent& u, double R, double C0_budget,
                            const LewisSearchOptions& opts) {
  if (!(R > 0)) throw AnalysisError("search radius must be positive");
  if (u.is_constant()) throw AnalysisError("u constant");

  const auto curves = trace_zero_set(u, Box::square(0.0, R), R / 128.0);
  std::vector<cplx> centers;
  for (const auto& c : curves)
    for (const cplx p : centers_on(c, R, opts.centers_per_curve)) {
      const cplx z = newton_polish(u, p);
      centers.push_back(std::abs(z - p) <= R / 64.0 && std::abs(z) < R ? z : p);
    }
  if (centers.empty()) throw AnalysisError("u has no zero in D(0,R)");

  std::vector<Candidate> cands;
  for (const cplx c : centers)
    for (int j = 1; j <= opts.dyadic_levels; ++j) {
      const double r = std::ldexp(R, -j);
      if (std::abs(c) + r <= R) cands.push_back({c, r, 0.0});
    }
  if (cands.empty()) throw AnalysisError("no candidate disc fits inside D(0,R)");

  // coarse screen, then exact evaluation of the most promising discs
  constexpr int coarse = 512;
  const double m0 = circle_max(u, 0.0, 0.5 * R, coarse).value;
  parallel_for(cands.size(), [&](std::size_t k) {
    Candidate& c = cands[k];
    double ma = 0.0, mu = -std::numeric_limits<double>::infinity();
    double m34 = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < coarse; ++k) {
      const cplx e = std::polar(1.0, kTwoPi * k / coarse);
      const double x = u(c.center + c.radius * e);
      ma = std::max(ma, std::abs(x));
      mu = std::max(mu, x);
      m34 = std::max(m34, u(c.center + 0.75 * c.radius * e));
    }
    if (ma < opts.min_mass || !(mu > 0) || !(m34 > 0)) {
      c.score = std::numeric_limits<double>::infinity();
      return;
    }
    c.score = std::max(ma / m34, m0 / mu);
  });
  std::vector<Candidate> order = cands;
  std::sort(order.begin(), order.end(), better);
  if (!std::isfinite(order.front().score))
    throw AnalysisError("no candidate disc meets the mass constraint");
  order.resize(std::min<std::size_t>(order.size(), 16));

  std::vector<LewisDisc> exact(order.size());
  parallel_for(order.size(), [&](std::size_t k) {
    exact[k] = lewis_disc_at(u, order[k].center, order[k].radius, R);
  });
  std::size_t best = order.size();
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (exact[k].M < opts.min_mass) continue;
    const Candidate a{exact[k].center, exact[k].radius, exact[k].C0()};
    if (best == order.size() ||
        better(a, Candidate{exact[best].center, exact[best].radius, exact[best].C0()}))
      best = k;
  }
  if (best == order.size()) throw AnalysisError("no candidate disc meets the mass constraint");
  LewisDisc d = exact[best];
  d.budget = C0_budget;
  d.budget_met = d.C0() <= C0_budget;
  d.candidates = cands.size();
  return d;
}

RescaledMap rescale(const HarmonicMap& f, const LewisDisc& d) {
  if (!(d.M > 0)) throw AnalysisError("rescaling needs a disc with positive mass");
  return RescaledMap{f, d, f.u.affine_pullback(d.center, d.radius, 1.0 / d.M),
                     f.v.affine_pullback(d.center, d.radius, 1.0 / d.M)};
}

RescaledInvariants check_rescaled_invariants(const RescaledMap& rm, int grid_n, double eps) {
  RescaledInvariants inv;
  inv.C0 = rm.disc.C0();
  inv.u_at_zero = std::abs(rm.U(0.0));
  const double lim = 1.0 - eps;
  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      const cplx z{-lim + 2.0 * lim * i / (grid_n - 1), -lim + 2.0 * lim * j / (grid_n - 1)};
      if (std::abs(z) > lim) continue;
      inv.sup_abs = std::max(inv.sup_abs, std::abs(rm.U(z)));
    }
  inv.mass_34 = circle_max(rm.U, 0.0, 0.75).value;
  inv.zero_ok = inv.u_at_zero <= 1e-9;
  inv.bound_ok = inv.sup_abs <= 1.0 + 1e-6;
  inv.doubling_ok = inv.mass_34 * (1.0 + 1e-9) >= 1.0 / inv.C0;
  return inv;
}

RescaledSequence rescaled_sequence(const HarmonicMap& f, const std::vector<double>& schedule,
                                   double C0_budget) {
  if (f.u.is_constant()) throw AnalysisError("u constant");
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end())
    throw AnalysisError("radius schedule must be increasing");
  RescaledSequence seq;
  double prev = 0.0;
  for (double R : schedule) {
    LewisSearchOptions opts;
    opts.min_mass = prev;
    LewisDisc d;
    try {
      d = lewis_disc_search(f.u, R, C0_budget, opts);
    } catch (const AnalysisError&) {
      if (prev == 0.0) throw;
      d = lewis_disc_search(f.u, R, C0_budget);
    }
    if (d.M < prev * (1.0 - 1e-6)) seq.monotone = false;
    prev = std::max(prev, d.M);
    seq.maps.push_back(rescale(f, d));
    seq.invariants.push_back(check_rescaled_invariants(seq.maps.back()));
    seq.L = std::max(seq.L, circle_max_abs(f.v, 0.0, 1.0).value / d.M);
  }
  return seq;
}

namespace {

struct UnitGrid {
  int n;
  double lim = 1.0 - 1e-3;
  std::vector<cplx> F;
  std::vector<bool> inside;

  UnitGrid(const RescaledMap& rm, int grid_n) : n(std::max(grid_n, 3)) {
    F.resize(static_cast<std::size_t>(n) * n);
    inside.resize(F.size());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto k = index(i, j);
        inside[k] = std::abs(at(i, j)) <= lim;
        F[k] = rm(at(i, j));
      }
  }
  cplx at(int i, int j) const { return {-lim + 2.0 * lim * i / (n - 1), -lim + 2.0 * lim * j / (n - 1)}; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j * n + i); }
};

void check_inclusions(const RescaledMap& rm, const UnitGrid& g, double zero_tol, TheoremVerdict& v) {
  std::size_t zeros = 0, bad = 0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const auto k = g.index(i, j);
      if (!g.inside[k]) continue;
      for (int dir = 0; dir < 2; ++dir) {
        const int i2 = i + (dir == 0), j2 = j + (dir == 1);
        if (i2 >= g.n || j2 >= g.n) continue;
        const auto k2 = g.index(i2, j2);
        if (!g.inside[k2]) continue;
        const double ua = g.F[k].real(), ub = g.F[k2].real();
        if (ua == 0.0 || (ub != 0.0 && sgn(ua) != sgn(ub))) {
          const cplx z = ua == 0.0 ? g.at(i, j) : bisect_segment(rm.U, g.at(i, j), g.at(i2, j2), ua);
          ++zeros;
          const double vz = rm.V(z);
          if (std::abs(vz) > zero_tol) {
            ++bad;
            v.conclusion.fail({z, vz, std::abs(vz), "U = 0 but V != 0"});
          }
        }
        const double va = g.F[k].imag(), vb = g.F[k2].imag();
        if (va == 0.0 || (vb != 0.0 && sgn(va) != sgn(vb))) {
          const cplx z = va == 0.0 ? g.at(i, j) : bisect_segment(rm.V, g.at(i, j), g.at(i2, j2), va);
          ++zeros;
          const double uz = rm.U(z);
          if (uz < -zero_tol) {
            ++bad;
            v.conclusion.fail({z, uz, -uz, "V = 0 but U < 0"});
          }
        }
      }
    }
  v.params["zeros_checked"] = static_cast<double>(zeros);
  v.params["inclusion_violations"] = static_cast<double>(bad);
}

TheoremVerdict grid_verdict(const RescaledMap& rm, int grid_n) {
  TheoremVerdict v;
  v.theorem = TheoremId::rescaled_range;
  v.sampling.kind = "grid";
  v.sampling.n_grid = grid_n;
  v.sampling.radius = 1.0 - 1e-3;
  v.sampling.samples = static_cast<std::size_t>(grid_n) * grid_n;
  v.params["M_n"] = rm.disc.M;
  return v;
}

}  // namespace

TheoremVerdict zero_set_inclusions_check(const RescaledMap& rm, int grid_n, double zero_tol) {
  TheoremVerdict v = grid_verdict(rm, grid_n);
  v.params["zero_tol"] = zero_tol;
  check_inclusions(rm, UnitGrid(rm, grid_n), zero_tol, v);
  return v;
}

TheoremVerdict rescaled_range_check(const RescaledMap& rm, const ArcSet& D_f, int grid_n,
                                    double tol_rad, double zero_tol) {
  TheoremVerdict v = grid_verdict(rm, grid_n);
  v.params["tol_rad"] = tol_rad;
  v.params["zero_tol"] = zero_tol;
  v.notes.push_back("directions of a single rescaled map approach D_f only as M_n grows");
  const UnitGrid g(rm, grid_n);

  std::size_t outside = 0;
  for (std::size_t k = 0; k < g.F.size(); ++k) {
    if (!g.inside[k] || std::abs(g.F[k]) < 1e-2) continue;
    const double d = D_f.distance(std::arg(g.F[k]));
    if (d > tol_rad) {
      ++outside;
      v.conclusion.fail({g.at(static_cast<int>(k % g.n), static_cast<int>(k / g.n)), std::arg(g.F[k]), d,
                         "direction of F outside D_f"});
    }
  }
  v.params["direction_violations"] = static_cast<double>(outside);

  const auto alpha = fit_i_alpha(D_f, tol_rad);
  v.params["inclusions_checked"] = alpha ? 1.0 : 0.0;
  if (alpha) {
    v.params["alpha"] = *alpha;
    check_inclusions(rm, g, zero_tol, v);
  } else {
    v.notes.push_back("D_f does not fit any I_alpha; zero-set inclusions not required");
  }
  return v;
}

}  // namespace hrange
