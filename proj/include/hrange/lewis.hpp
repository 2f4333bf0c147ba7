#pragma once

#include <vector>

#include "hrange/arcs.hpp"
#include "hrange/expr.hpp"
#include "hrange/verdict.hpp"
#include "hrange/zeros.hpp"

namespace hrange {

/// Zero of u in the box: sign change on a 64 x 64 grid nearest the centre,
/// bisection, then a Newton polish that is kept only if it improves |u|.
cplx find_zero(const HarmonicComponent& u, const Box& box);

/// Disc D(center, radius) with u(center) = 0 and its oscillation ratios.
struct LewisDisc {
  cplx center;
  double radius = 0.0;
  double M = 0.0;               // M(|u|, center, radius)
  double growth_ratio = 0.0;    // M(u, 0, R/2) / M(u, center, radius)
  double doubling_ratio = 0.0;  // M(|u|, center, radius) / M(u, center, 3 radius / 4)
  double u_at_center = 0.0;
  double search_radius = 0.0;
  double budget = 0.0;
  bool budget_met = false;
  std::size_t candidates = 0;

  /// Empirical constant: the larger of the two ratios.
  double C0() const { return std::max(growth_ratio, doubling_ratio); }
};

struct LewisSearchOptions {
  int centers_per_curve = 64;
  int dyadic_levels = 20;
  /// Candidates with M below this are skipped (keeps M_n monotone in a sequence).
  double min_mass = 0.0;
};

/// Searches discs centred on the zero set of u inside D(0, R) with dyadic radii
/// R 2^-j and returns the one minimising max(doubling, growth).
LewisDisc lewis_disc_search(const HarmonicComponent& u, double R, double C0_budget = 100.0,
                            const LewisSearchOptions& opts = {});

/// Ratios of a given disc inside D(0, R).
LewisDisc lewis_disc_at(const HarmonicComponent& u, cplx center, double r, double R);

/// u_n(z) = u(z_n + r_n z) / M_n and likewise v_n on the unit disc.
struct RescaledMap {
  HarmonicMap source;
  LewisDisc disc;
  HarmonicComponent U;
  HarmonicComponent V;

  cplx operator()(cplx z) const { return {U(z), V(z)}; }
};

RescaledMap rescale(const HarmonicMap& f, const LewisDisc& disc);

struct RescaledInvariants {
  double u_at_zero = 0.0;   // |U_n(0)|
  double sup_abs = 0.0;     // max |U_n| on the grid inside |z| <= 1 - eps
  double mass_34 = 0.0;     // M(U_n, 0, 3/4)
  double C0 = 0.0;
  bool zero_ok = false;
  bool bound_ok = false;
  bool doubling_ok = false;

  bool all() const { return zero_ok && bound_ok && doubling_ok; }
};

RescaledInvariants check_rescaled_invariants(const RescaledMap& rm, int grid_n = 101,
                                             double eps = 1e-3);

struct RescaledSequence {
  std::vector<RescaledMap> maps;
  std::vector<RescaledInvariants> invariants;
  double L = 0.0;  // sup_n M(|v|, 0, 1) / M_n
  bool monotone = true;
};

/// One rescaled map per radius of an increasing schedule.
RescaledSequence rescaled_sequence(const HarmonicMap& f, const std::vector<double>& schedule,
                                   double C0_budget = 100.0);

/// {U = 0} in {V = 0} in {U >= 0} at bisected sign changes of U and V on
/// grid edges inside |z| <= 1 - 1e-3.
TheoremVerdict zero_set_inclusions_check(const RescaledMap& rm, int grid_n = 101,
                                         double zero_tol = 1e-7);

/// Directions of F = U_n + i V_n against D_f, and, when D_f fits some I_alpha,
/// the zero-set inclusions {U = 0} in {V = 0} in {U >= 0}.
TheoremVerdict rescaled_range_check(const RescaledMap& rm, const ArcSet& D_f, int grid_n = 101,
                                    double tol_rad = kTwoPi / 360.0, double zero_tol = 1e-7);

}  // namespace hrange
