#include "hrange/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "hrange/arcs.hpp"
#include "hrange/circle.hpp"

namespace hrange {

namespace {

double directed_distance(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  double worst = 0.0;
  for (const cplx p : x) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx q : y) {
      best = std::min(best, std::norm(p - q));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Root of g on [a, b] by bisection, given g(a) and g(b) of opposite sign.
template <class G>
double bisect(const G& g, double a, double b, double ga) {
  for (int k = 0; k < 200; ++k) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm < 0) == (ga < 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Root of u on the segment [p, q] (u(p), u(q) of opposite sign).
cplx segment_root(const HarmonicComponent& u, cplx p, cplx q, double up) {
  const double t = bisect([&](double s) { return u(p + s * (q - p)); }, 0.0, 1.0, up);
  return p + t * (q - p);
}

// Minimal-norm Newton projection onto {u = 0}.
cplx newton_project(const HarmonicComponent& u, cplx q, int iters = 30) {
  for (int k = 0; k < iters; ++k) {
    const double val = u(q);
    if (val == 0.0) break;
    const cplx g = u.gradient(q);
    const double g2 = std::norm(g);
    if (!(g2 > 0)) break;
    const cplx dq = val * g / g2;
    q -= dq;
    if (std::abs(dq) <= 4 * kEps * (1.0 + std::abs(q))) break;
  }
  return q;
}

double local_scale(const HarmonicComponent& u, cplx q, double step) {
  return std::abs(u.analytic(q)) + std::abs(u.gradient(q)) * step;
}

class SpatialHash {
 public:
  explicit SpatialHash(double cell) : cell_(cell) {}

  void insert(cplx p, int owner) { cells_[key(cell_of(p.real()), cell_of(p.imag()))].push_back({p, owner}); }

  // Nearest stored point within d (d <= cell) whose owner differs from `skip`.
  std::optional<cplx> near(cplx p, double d, int skip = -1) const {
    const long ix = cell_of(p.real()), iy = cell_of(p.imag());
    std::optional<cplx> best;
    double bd = d;
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        const auto it = cells_.find(key(ix + dx, iy + dy));
        if (it == cells_.end()) continue;
        for (const auto& [q, owner] : it->second) {
          if (owner == skip) continue;
          const double dd = std::abs(q - p);
          if (dd <= bd) {
            bd = dd;
            best = q;
          }
        }
      }
    return best;
  }

 private:
  long cell_of(double x) const { return static_cast<long>(std::floor(x / cell_)); }
  static std::uint64_t key(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
  }
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<cplx, int>>> cells_;
};

class Tracer {
 public:
  Tracer(const HarmonicComponent& u, const Box& box, double step)
      : u_(u), box_(box), step_(step), hash_(step) {}

  std::vector<ZeroCurve> run();

 private:
  enum class End { boundary, closed, critical, collision, stalled };

  struct Branch {
    cplx start;
    cplx dir;
    int component;
    cplx origin;
  };

  struct Trace {
    std::vector<cplx> pts;
    End end = End::stalled;
  };

  Trace march(cplx p0, cplx dir, int owner, std::optional<cplx> origin, bool allow_close,
              int component);
  std::optional<cplx> critical_near(cplx p) const;
  bool visited(cplx c) const;
  void open_critical(cplx c, int component);
  std::optional<cplx> boundary_root(cplx p, cplx q) const;
  void add_curve(std::vector<cplx> pts, int component, bool closed);

  const HarmonicComponent& u_;
  Box box_;
  double step_;
  SpatialHash hash_;
  std::vector<cplx> criticals_;
  std::deque<Branch> queue_;
  std::vector<ZeroCurve> curves_;
};

std::optional<cplx> Tracer::critical_near(cplx p) const {
  const cplx d1 = u_.analytic_derivative(p);
  const cplx d2 = u_.analytic_second_derivative(p);
  if (d2 == cplx{}) {
    if (d1 != cplx{}) return std::nullopt;
  } else if (!(std::abs(d1 / d2) < step_)) {
    return std::nullopt;
  }
  cplx c = p;
  for (int k = 0; k < 200; ++k) {
    const cplx a = u_.analytic_derivative(c);
    const cplx b = u_.analytic_second_derivative(c);
    if (a == cplx{} || b == cplx{}) break;
    const cplx dc = a / b;
    c -= dc;
    if (std::abs(dc) <= 4 * kEps * (1.0 + std::abs(c))) break;
  }
  if (!(std::abs(c - p) <= 1.5 * step_) || !box_.contains(c)) return std::nullopt;
  double ring = 0.0;
  for (int j = 0; j < 16; ++j) ring = std::max(ring, std::abs(u_(c + std::polar(step_, kTwoPi * j / 16))));
  if (!(std::abs(u_(c)) <= 1e-8 * (std::abs(u_.analytic(c)) + ring))) return std::nullopt;
  if (!(std::abs(u_.analytic_derivative(c)) * step_ <= 1e-6 * (std::abs(u_.analytic(c)) + ring)))
    return std::nullopt;
  return c;
}

bool Tracer::visited(cplx c) const {
  return std::any_of(criticals_.begin(), criticals_.end(),
                     [&](cplx x) { return std::abs(x - c) <= 1e-3 * step_; });
}

void Tracer::open_critical(cplx c, int component) {
  criticals_.push_back(c);
  for (double phi : circle_sign_changes(u_, c, step_, 720)) {
    const cplx dir = std::polar(1.0, phi);
    const cplx probe = c + 3.0 * step_ * dir;
    if (hash_.near(probe, 0.75 * step_)) continue;
    const cplx start = newton_project(u_, c + step_ * dir);
    if (!box_.contains(start)) continue;
    queue_.push_back({start, dir, component, c});
  }
}

std::optional<cplx> Tracer::boundary_root(cplx p, cplx q) const {
  // where the segment p -> q leaves the box
  double s = 1.0;
  const cplx d = q - p;
  auto clip = [&](double from, double delta, double lo, double hi) {
    if (delta > 0 && from + delta > hi) s = std::min(s, (hi - from) / delta);
    if (delta < 0 && from + delta < lo) s = std::min(s, (lo - from) / delta);
  };
  clip(p.real(), d.real(), box_.x0, box_.x1);
  clip(p.imag(), d.imag(), box_.y0, box_.y1);
  s = std::clamp(s, 0.0, 1.0);
  cplx b = p + s * d;
  b = {std::clamp(b.real(), box_.x0, box_.x1), std::clamp(b.imag(), box_.y0, box_.y1)};
  // slide along the side that was hit
  const double h = std::max(std::abs(d), step_);
  cplx e;
  if (b.real() == box_.x0 || b.real() == box_.x1) {
    e = {0.0, 1.0};
  } else {
    e = {1.0, 0.0};
  }
  auto on_side = [&](cplx z) {
    return cplx{std::clamp(z.real(), box_.x0, box_.x1), std::clamp(z.imag(), box_.y0, box_.y1)};
  };
  const cplx a0 = on_side(b - h * e), a1 = on_side(b + h * e);
  const double ua = u_(a0), ub = u_(b), uc = u_(a1);
  if (ub == 0.0) return b;
  if (sgn(ua) != sgn(ub) && ua != 0.0) return segment_root(u_, b, a0, ub);
  if (sgn(uc) != sgn(ub) && uc != 0.0) return segment_root(u_, b, a1, ub);
  if (ua == 0.0) return a0;
  if (uc == 0.0) return a1;
  return std::nullopt;
}

Tracer::Trace Tracer::march(cplx p0, cplx dir, int owner, std::optional<cplx> origin,
                            bool allow_close, int component) {
  Trace tr;
  tr.pts.push_back(p0);
  cplx p = p0;
  double h = step_;
  double travelled = 0.0;
  const std::size_t max_steps =
      static_cast<std::size_t>(64.0 * (box_.width() + box_.height()) / step_) + 4096;
  for (std::size_t it = 0; it < max_steps; ++it) {
    if (auto c = critical_near(p)) {
      const bool own_origin = origin && std::abs(*c - *origin) <= 1e-3 * step_;
      if (!own_origin || travelled > 3.0 * step_) {
        tr.pts.push_back(*c);
        if (!visited(*c)) open_critical(*c, component);
        tr.end = End::critical;
        return tr;
      }
    }
    const cplx g = u_.gradient(p);
    if (!(std::abs(g) > 0)) {
      tr.end = End::stalled;
      return tr;
    }
    cplx t = cplx{0.0, 1.0} * g / std::abs(g);
    if ((t * std::conj(dir)).real() < 0) t = -t;

    const cplx q = newton_project(u_, p + h * t);
    const double dq = std::abs(q - p);
    const bool converged = std::abs(u_(q)) <= 1e-10 * local_scale(u_, q, step_);
    if (!converged || dq > 2.0 * h || dq < 0.1 * h || (q - p) * std::conj(t) == cplx{} ||
        ((q - p) * std::conj(t)).real() <= 0) {
      h *= 0.5;
      if (h < step_ / 64.0) {
        tr.end = End::stalled;
        return tr;
      }
      continue;
    }
    if (!box_.contains(q)) {
      if (auto b = boundary_root(p, q)) {
        if (std::abs(*b - p) > 1e-9 * step_) {
          tr.pts.push_back(*b);
          hash_.insert(*b, owner);
        }
      }
      tr.end = End::boundary;
      return tr;
    }
    if (allow_close && travelled > 2.0 * step_ && std::abs(q - p0) < 0.75 * h) {
      tr.pts.push_back(p0);
      tr.end = End::closed;
      return tr;
    }
    if (auto other = hash_.near(q, 0.4 * step_, owner)) {
      tr.pts.push_back(*other);
      tr.end = End::collision;
      return tr;
    }
    tr.pts.push_back(q);
    hash_.insert(q, owner);
    travelled += dq;
    dir = (q - p) / dq;
    p = q;
    h = std::min(step_, 1.5 * h);
  }
  return tr;
}

void Tracer::add_curve(std::vector<cplx> pts, int component, bool closed) {
  if (pts.size() < 2) return;
  ZeroCurve c;
  c.points = std::move(pts);
  c.component = component;
  c.closed = closed;
  for (std::size_t k = 1; k < c.points.size(); ++k)
    c.arc_length += std::abs(c.points[k] - c.points[k - 1]);
  curves_.push_back(std::move(c));
}

std::vector<ZeroCurve> Tracer::run() {
  const int nx = std::clamp(static_cast<int>(std::ceil(box_.width() / step_)), 16, 1024);
  const int ny = std::clamp(static_cast<int>(std::ceil(box_.height() / step_)), 16, 1024);
  auto at = [&](int i, int j) {
    return cplx{box_.x0 + box_.width() * i / nx, box_.y0 + box_.height() * j / ny};
  };
  std::vector<double> val(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j * (nx + 1) + i); };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) val[idx(i, j)] = u_(at(i, j));

  std::vector<cplx> seeds;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double a = val[idx(i, j)];
      if (a == 0.0) {
        seeds.push_back(at(i, j));
        continue;
      }
      if (i < nx) {
        const double b = val[idx(i + 1, j)];
        if (b != 0.0 && sgn(a) != sgn(b)) seeds.push_back(segment_root(u_, at(i, j), at(i + 1, j), a));
      }
      if (j < ny) {
        const double b = val[idx(i, j + 1)];
        if (b != 0.0 && sgn(a) != sgn(b)) seeds.push_back(segment_root(u_, at(i, j), at(i, j + 1), a));
      }
    }

  int component = 0;
  auto drain = [&] {
    while (!queue_.empty()) {
      const Branch br = queue_.front();
      queue_.pop_front();
      if (hash_.near(br.origin + 3.0 * step_ * br.dir, 0.75 * step_)) continue;
      const int owner = static_cast<int>(curves_.size());
      hash_.insert(br.start, owner);
      Trace tr = march(br.start, br.dir, owner, br.origin, false, br.component);
      tr.pts.insert(tr.pts.begin(), br.origin);
      add_curve(std::move(tr.pts), br.component, false);
    }
  };

  for (const cplx seed : seeds) {
    if (hash_.near(seed, 0.75 * step_)) continue;
    if (visited(seed)) continue;
    const cplx g = u_.gradient(seed);
    if (auto c = critical_near(seed); c && std::abs(*c - seed) < 1e-6 * step_) {
      if (!visited(*c)) open_critical(*c, component);
      drain();
      ++component;
      continue;
    }
    if (!(std::abs(g) > 0)) continue;
    const cplx t = cplx{0.0, 1.0} * g / std::abs(g);
    const int owner = static_cast<int>(curves_.size());
    hash_.insert(seed, owner);
    Trace fwd = march(seed, t, owner, std::nullopt, true, component);
    std::vector<cplx> pts;
    bool closed = fwd.end == End::closed;
    if (!closed) {
      Trace bwd = march(seed, -t, owner, std::nullopt, false, component);
      pts.assign(bwd.pts.rbegin(), bwd.pts.rend());
      pts.insert(pts.end(), fwd.pts.begin() + 1, fwd.pts.end());
    } else {
      pts = std::move(fwd.pts);
    }
    add_curve(std::move(pts), component, closed);
    drain();
    ++component;
  }

  // drop curves lying within one step of an earlier one
  std::vector<ZeroCurve> out;
  for (auto& c : curves_) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const ZeroCurve& o) {
      return directed_distance(c.points, o.points) <= step_;
    });
    if (!dup) out.push_back(std::move(c));
  }
  std::map<int, int> renumber;
  for (auto& c : out) {
    const auto it = renumber.try_emplace(c.component, static_cast<int>(renumber.size())).first;
    c.component = it->second;
  }
  return out;
}

}  // namespace

double polyline_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

std::vector<ZeroCurve> trace_zero_set(const HarmonicComponent& u, const Box& box, double step) {
  if (!(step > 0)) throw AnalysisError("trace step must be positive");
  if (!(box.width() > 0) || !(box.height() > 0)) throw AnalysisError("trace box is empty");
  Tracer tracer(u, box, step);
  return tracer.run();
}

std::vector<double> circle_sign_changes(const HarmonicComponent& u, cplx c, double r, int samples) {
  const int n = std::max(samples, 16);
  const double h = kTwoPi / n;
  auto g = [&](double t) { return u(c + std::polar(r, t)); };
  std::vector<double> vals(static_cast<std::size_t>(n));
  double peak = 0.0;
  for (int j = 0; j < n; ++j) {
    vals[static_cast<std::size_t>(j)] = g((j + 0.5) * h);
    peak = std::max(peak, std::abs(vals[static_cast<std::size_t>(j)]));
  }
  std::vector<double> out;
  auto scan = [&](double a, double b, double ga, double gb) {
    if (ga == 0.0 || gb == 0.0 || sgn(ga) == sgn(gb)) return;
    out.push_back(wrap_angle(bisect(g, a, b, ga)));
  };
  for (int j = 0; j < n; ++j) {
    const double a = (j + 0.5) * h;
    const double ga = vals[static_cast<std::size_t>(j)];
    const double gb = vals[static_cast<std::size_t>((j + 1) % n)];
    if (ga == 0.0) {
      out.push_back(wrap_angle(a));
      continue;
    }
    if (sgn(ga) != sgn(gb)) {
      scan(a, a + h, ga, gb);
      continue;
    }
    // a small local minimum of |u| may hide two nearby crossings
    const double gp = vals[static_cast<std::size_t>((j + n - 1) % n)];
    if (std::abs(ga) <= std::abs(gp) && std::abs(ga) <= std::abs(gb) && std::abs(ga) < 1e-2 * peak &&
        sgn(gp) == sgn(ga)) {
      constexpr int sub = 64;
      double prev_t = a - h, prev_g = gp;
      for (int k = 1; k <= 2 * sub; ++k) {
        const double t = a - h + k * (h / sub);
        const double gt = k == 2 * sub ? gb : g(t);
        scan(prev_t, t, prev_g, gt);
        prev_t = t;
        prev_g = gt;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-12; }),
            out.end());
  return out;
}

LocalStructure local_structure(const HarmonicComponent& u, cplx z0, double r) {
  LocalStructure ls;
  ls.multiplicity = multiplicity(u, z0, r);
  double rho = r;
  for (int attempt = 0; attempt < 12; ++attempt, rho *= 0.25) {
    auto rays = circle_sign_changes(u, z0, rho, 4096);
    if (static_cast<int>(rays.size()) != 2 * ls.multiplicity) continue;
    ls.radius = rho;
    ls.ray_angles = std::move(rays);
    const std::size_t m = ls.ray_angles.size();
    for (std::size_t k = 0; k < m; ++k) {
      const double a = ls.ray_angles[k];
      double b = ls.ray_angles[(k + 1) % m];
      if (b <= a) b += kTwoPi;
      ls.sector_signs.push_back(sgn(u(z0 + std::polar(rho, 0.5 * (a + b)))));
    }
    return ls;
  }
  throw AnalysisError("degenerate zero: ray count never matched the multiplicity", z0);
}

TheoremVerdict cleaning_check(const HarmonicComponent& U, const HarmonicComponent& V, double r,
                              double tol) {
  TheoremVerdict v;
  v.theorem = TheoremId::cleaning;
  v.sampling.kind = "grid-201";
  v.sampling.radius = r;
  v.params["r"] = r;
  v.params["tol"] = tol;

  constexpr int n = 201;
  const double h = 2.0 * r / (n - 1);
  auto at = [&](int i, int j) { return cplx{-r + i * h, -r + j * h}; };
  std::vector<double> gu(n * n), gv(n * n);
  std::vector<bool> inside(n * n);
  double su = 0.0, sv = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const cplx z = at(i, j);
      const auto k = static_cast<std::size_t>(j * n + i);
      inside[k] = std::abs(z) < r;
      gu[k] = U(z);
      gv[k] = V(z);
      if (inside[k]) {
        su = std::max(su, std::abs(gu[k]));
        sv = std::max(sv, std::abs(gv[k]));
      }
    }
  v.sampling.samples = static_cast<std::size_t>(n) * n;

  const double scale = std::max(su, sv);
  if (std::abs(U(0.0)) > tol * std::max(scale, 1.0) || std::abs(V(0.0)) > tol * std::max(scale, 1.0))
    v.hypothesis.fail({0.0, std::max(std::abs(U(0.0)), std::abs(V(0.0))), 1.0, "U(0) or V(0) is not zero"});
  // the remaining hypotheses come from the rescaling and the direction set, not from U and V alone
  v.hypothesis.applicable = false;
  v.notes.push_back("only U(0) = V(0) = 0 is checked; zero-set coincidence is reported, not implied");

  constexpr double delta = 1e-9;
  std::size_t zeros_checked = 0;
  auto coincide = [&](const HarmonicComponent& A, const HarmonicComponent& B,
                      const std::vector<double>& ga, double sb, const char* note) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(j * n + i);
        if (!inside[k]) continue;
        for (int dir = 0; dir < 2; ++dir) {
          const int i2 = i + (dir == 0), j2 = j + (dir == 1);
          if (i2 >= n || j2 >= n) continue;
          const auto k2 = static_cast<std::size_t>(j2 * n + i2);
          if (!inside[k2]) continue;
          const double a = ga[k], b = ga[k2];
          cplx root;
          if (a == 0.0) {
            root = at(i, j);
          } else if (b != 0.0 && sgn(a) != sgn(b)) {
            root = segment_root(A, at(i, j), at(i2, j2), a);
          } else {
            continue;
          }
          ++zeros_checked;
          const double allowed = tol * sb + std::abs(B.gradient(root)) * delta * r;
          const double excess = std::abs(B(root)) - allowed;
          if (excess > 0) v.conclusion.fail({root, B(root), excess, note});
        }
      }
  };
  coincide(U, V, gu, sv, "U = 0 but V != 0");
  coincide(V, U, gv, su, "V = 0 but U != 0");
  v.params["zeros_checked"] = static_cast<double>(zeros_checked);

  std::size_t pos = 0, neg = 0;
  const double floor = tol * tol * std::max(su * sv, 1e-300);
  Witness wpos{}, wneg{};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(j * n + i);
      if (!inside[k]) continue;
      const double p = gu[k] * gv[k];
      if (p > floor) {
        if (pos++ == 0 || p > wpos.value) wpos = {at(i, j), p, p, "UV > 0"};
      } else if (p < -floor) {
        if (neg++ == 0 || -p > -wneg.value) wneg = {at(i, j), p, -p, "UV < 0"};
      }
    }
  v.params["uv_positive"] = static_cast<double>(pos);
  v.params["uv_negative"] = static_cast<double>(neg);
  if (pos > 0 && neg > 0) {
    const bool pos_minor = pos < neg;
    Witness w = pos_minor ? wpos : wneg;
    w.note += ": UV changes sign";
    v.conclusion.fail(w);
    v.params["form"] = 0;
  } else {
    v.params["form"] = neg == 0 ? 1.0 : -1.0;
    v.notes.push_back(neg == 0 ? "UV >= 0: {U=0} = {V=0} with U, V of equal sign"
                               : "UV <= 0: {U=0} = {V=0} with U, V of opposite sign");
  }
  return v;
}

double tract_dominance_radius(const HarmonicComponent& u) {
  const auto deg = u.polynomial_degree();
  if (!deg) throw AnalysisError("tract analysis needs a polynomial");
  const int n = *deg;
  if (n == 0) return 0.0;
  const auto c = *polynomial_coefficients(u.expr());
  const double lead = std::abs(c[static_cast<std::size_t>(n)]);
  auto excess = [&](double R) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::abs(c[static_cast<std::size_t>(k)]) * std::pow(R, k - n);
    return s / lead;
  };
  double hi = 1.0;
  while (excess(hi) > 0.5) hi *= 2.0;
  if (hi == 1.0) return 1.0;
  double lo = 0.5 * hi;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

TractReport tract_report(const HarmonicComponent& u, double R) {
  const auto deg = u.polynomial_degree();
  if (!deg) throw AnalysisError("tract analysis needs a polynomial");
  if (!(R > 0)) throw AnalysisError("tract radius must be positive");
  TractReport t;
  t.degree = *deg;
  t.radius = R;
  t.dominance_radius = tract_dominance_radius(u);
  t.crossing_angles = circle_sign_changes(u, 0.0, R, 8192);
  t.sign_changes = static_cast<int>(t.crossing_angles.size());
  t.sign_changes_outer = static_cast<int>(circle_sign_changes(u, 0.0, 2.0 * R, 8192).size());
  if (t.sign_changes != t.sign_changes_outer) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "R too small: %d sign changes at R but %d at 2R; use R >= %.6g",
                  t.sign_changes, t.sign_changes_outer, t.dominance_radius);
    throw AnalysisError(buf);
  }
  t.components = t.sign_changes;
  return t;
}

DependenceReport detect_dependence(const HarmonicMap& f, const RangeSample& samples, double a,
                                   double R) {
  DependenceReport d;
  d.a = a;
  d.radius = R;
  d.hypothesis_holds = true;
  d.quadrant_holds = true;
  double suv = 0.0, svv = 0.0, umax = 0.0, vmax = 0.0;
  double worst_cone = 0.0, worst_quad = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!(std::abs(samples.z[k]) > R)) continue;
    const cplx w = f(samples.z[k]);
    const double u = w.real(), v = w.imag();
    ++d.samples_used;
    suv += u * v;
    svv += v * v;
    umax = std::max(umax, std::abs(u));
    vmax = std::max(vmax, std::abs(v));
    const double cone = std::abs(u) - a * std::abs(v);
    if (cone > 1e-9 * std::max(std::abs(u), 1.0) && cone > worst_cone) {
      worst_cone = cone;
      d.hypothesis_holds = false;
      d.hypothesis_witness = samples.z[k];
    }
    if (u * v < -worst_quad) {
      worst_quad = -u * v;
    }
  }
  const double scale = std::max(umax, vmax);
  if (d.samples_used == 0) throw AnalysisError("no samples beyond the given radius");
  d.quadrant_holds = worst_quad <= 1e-12 * std::max(scale * scale, 1e-300);
  if (!(vmax > 1e-12 * std::max(umax, 1.0))) {
    d.degenerate = true;
    return d;
  }
  d.b = suv / svv;
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!(std::abs(samples.z[k]) > R)) continue;
    const cplx w = f(samples.z[k]);
    const double e = std::abs(w.real() - d.b * w.imag());
    if (e > worst) {
      worst = e;
      d.residual_witness = samples.z[k];
    }
  }
  d.residual = worst / scale;
  d.dependent = d.residual <= 1e-6;
  return d;
}

}  // namespace hrange
