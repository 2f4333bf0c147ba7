#include "hrange/report.hpp"

#include <cmath>

namespace hrange {

namespace {

// non-finite values become null so every document stays valid JSON
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
Json list(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

}  // namespace

Json to_json(cplx z) { return Json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

Json to_json(const ArcSet& a) {
  Json arcs = Json::array();
  for (const Arc& c : a.components())
    arcs.push_back({{"start", num(c.start)}, {"length", num(c.length)}, {"end", num(c.end())}});
  return Json{{"arcs", arcs}, {"measure", num(a.measure())}, {"full", a.is_full()}};
}

Json to_json(const Witness& w) {
  return Json{{"point", to_json(w.point)}, {"value", num(w.value)}, {"severity", num(w.severity)},
              {"note", w.note}};
}

Json to_json(const Claim& c) {
  return Json{{"holds", c.holds}, {"applicable", c.applicable}, {"witnesses", list(c.witnesses)}};
}

Json to_json(const SamplingInfo& s) {
  return Json{{"kind", s.kind}, {"radius", num(s.radius)}, {"samples", s.samples},
              {"n_grid", s.n_grid}, {"seed", s.seed}};
}

Json to_json(const TheoremVerdict& v) {
  Json params = Json::object();
  for (const auto& [k, x] : v.params) params[k] = num(x);
  return Json{{"theorem", to_string(v.theorem)},
              {"hypothesis", to_json(v.hypothesis)},
              {"conclusion", to_json(v.conclusion)},
              {"consistent", v.consistent()},
              {"params", params},
              {"notes", v.notes},
              {"sampling", to_json(v.sampling)}};
}

Json to_json(const CircleMax& m) {
  return Json{{"center", to_json(m.center)}, {"radius", num(m.radius)}, {"value", num(m.value)},
              {"argmax_angle", num(m.argmax_angle)}, {"samples", m.samples_used}};
}

Json to_json(const InequalityCheck& c) {
  return Json{{"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"holds", c.holds}};
}

Json summary_json(const RangeSample& s) {
  return Json{{"radius", num(s.radius)},
              {"n_grid", s.n_grid},
              {"seed", s.seed},
              {"samples", s.size()},
              {"grid_count", s.grid_count},
              {"random_count", s.random_count},
              {"refined_count", s.refined_count},
              {"refinement_truncated", s.refinement_truncated},
              {"origin_value", to_json(s.origin_value)},
              {"growth_scale", num(s.growth_scale)},
              {"refine_floor", num(s.refine_floor)},
              {"refine_resolution", num(s.refine_resolution)}};
}

Json to_json(const DirectionEstimate& e) {
  Json counts = Json::array();
  for (const auto& row : e.counts) {
    std::size_t occupied = 0;
    for (std::size_t c : row) occupied += c > 0;
    counts.push_back(occupied);
  }
  return Json{{"directions", to_json(e.arcs)},
              {"cutoffs", numbers(e.cutoffs)},
              {"bins", e.bins},
              {"occupied_bins", counts},
              {"stabilization_index", e.stabilization_index},
              {"stabilized", e.stabilized},
              {"low_confidence", e.low_confidence},
              {"large_samples", e.large_samples},
              {"origin", to_json(e.origin)},
              {"radius", num(e.radius)}};
}

namespace {

Json cone_json(const Cone& c) {
  return Json{{"axis", to_json(c.axis)}, {"half_aperture", num(c.half_aperture)},
              {"kind", c.kind == Cone::Kind::whole ? "whole" : "half"}};
}

}  // namespace

Json to_json(const ConeNormalization& n) {
  Json j{{"alpha", num(n.alpha)},
         {"theta", num(n.theta)},
         {"phi", num(n.phi)},
         {"a", num(n.a)},
         {"whole_cone", cone_json(n.whole)},
         {"half_cone", cone_json(n.half)},
         {"rotated", to_json(n.rotated)}};
  j["rho_hint"] = n.rho_hint ? num(*n.rho_hint) : Json(nullptr);
  return j;
}

Json to_json(const PhiProfile& p) {
  Json phi = Json::array(), inner = Json::array();
  for (std::size_t k = 0; k < p.bins(); ++k) {
    phi.push_back(p.empty[k] ? Json(nullptr) : num(p.phi[k]));
    inner.push_back(p.inner_empty[k] ? Json(nullptr) : num(p.phi_inner[k]));
  }
  return Json{{"edges", numbers(p.edges)}, {"phi", phi},          {"phi_inner", inner},
              {"inner_u_min", num(p.inner_u_min)}, {"inner_u_max", num(p.inner_u_max)},
              {"radius", num(p.radius)}};
}

Json to_json(const ZeroCurve& c) {
  return Json{{"component", c.component}, {"closed", c.closed}, {"arc_length", num(c.arc_length)},
              {"vertices", c.points.size()}};
}

Json to_json(const LocalStructure& l) {
  return Json{{"multiplicity", l.multiplicity}, {"radius", num(l.radius)},
              {"ray_angles", numbers(l.ray_angles)}, {"sector_signs", l.sector_signs}};
}

Json to_json(const TractReport& t) {
  return Json{{"degree", t.degree},
              {"radius", num(t.radius)},
              {"sign_changes", t.sign_changes},
              {"sign_changes_outer", t.sign_changes_outer},
              {"components", t.components},
              {"dominance_radius", num(t.dominance_radius)},
              {"crossing_angles", numbers(t.crossing_angles)}};
}

Json to_json(const DependenceReport& d) {
  Json j{{"b", num(d.b)},
         {"residual", num(d.residual)},
         {"dependent", d.dependent},
         {"a", num(d.a)},
         {"radius", num(d.radius)},
         {"hypothesis_holds", d.hypothesis_holds},
         {"quadrant_holds", d.quadrant_holds},
         {"degenerate", d.degenerate},
         {"samples_used", d.samples_used}};
  j["hypothesis_witness"] = d.hypothesis_witness ? to_json(*d.hypothesis_witness) : Json(nullptr);
  j["residual_witness"] = d.residual_witness ? to_json(*d.residual_witness) : Json(nullptr);
  return j;
}

Json to_json(const LewisDisc& d) {
  return Json{{"center", to_json(d.center)},
              {"radius", num(d.radius)},
              {"M", num(d.M)},
              {"growth_ratio", num(d.growth_ratio)},
              {"doubling_ratio", num(d.doubling_ratio)},
              {"C0", num(d.C0())},
              {"u_at_center", num(d.u_at_center)},
              {"search_radius", num(d.search_radius)},
              {"budget", num(d.budget)},
              {"budget_met", d.budget_met},
              {"candidates", d.candidates}};
}

Json to_json(const RescaledInvariants& inv) {
  return Json{{"u_at_zero", num(inv.u_at_zero)}, {"sup_abs", num(inv.sup_abs)},
              {"mass_34", num(inv.mass_34)},     {"C0", num(inv.C0)},
              {"zero_ok", inv.zero_ok},          {"bound_ok", inv.bound_ok},
              {"doubling_ok", inv.doubling_ok},  {"all", inv.all()}};
}

Json to_json(const RescaledMap& m) {
  return Json{{"disc", to_json(m.disc)}, {"U", to_string(m.U)}, {"V", to_string(m.V)}};
}

Json to_json(const RescaledSequence& s) {
  Json maps = Json::array();
  for (std::size_t k = 0; k < s.maps.size(); ++k) {
    Json m = to_json(s.maps[k]);
    m["invariants"] = to_json(s.invariants[k]);
    maps.push_back(std::move(m));
  }
  return Json{{"maps", maps}, {"L", num(s.L)}, {"monotone", s.monotone}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hrange
