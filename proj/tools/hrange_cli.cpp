#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hrange/catalog.hpp"
#include "hrange/circle.hpp"
#include "hrange/io.hpp"
#include "hrange/lewis.hpp"
#include "hrange/range.hpp"
#include "hrange/report.hpp"
#include "hrange/sampling.hpp"
#include "hrange/theorems.hpp"
#include "hrange/zeros.hpp"

using namespace hrange;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  Json out;
  int code = 0;
};

struct Options {
  // map source
  std::string map_text, catalog_name, map_file, catalog_file, arcs_text;
  // sampling
  double R = 0.0;
  int n_grid = 256;
  std::uint64_t seed = 1;
  int bins = 720;
  std::vector<double> cutoffs;
  double tol = kTwoPi / 360.0;
  // outputs
  std::string out_csv, svg;
  bool schema = false;
  // command specific
  std::string z_text = "0";
  std::string component = "u";
  double half = 4.0;
  std::vector<double> box;
  double step = 0.0;
  double r = 0.25;
  double budget = 100.0;
  std::vector<double> schedule{2, 4, 8, 16};
  bool check_range = false;
  double center_x = NAN, center_y = NAN, disc_radius = 0.0;
  double a = 1.0, b = 0.0, C = 1.0, alpha = 0.0, exponent = 0.5, outside = 1.0;
  std::size_t n = 1'000'000;
  std::string theorem = "all";
  std::string name, kind = "range", expect;
  bool verify = false;
};

// ---------------------------------------------------------------- helpers

std::string short_number(double x) {
  if (x == 0) x = 0.0;
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, p) : "nan";
}

std::string complex_text(cplx w) {
  const double im = w.imag() == 0 ? 0.0 : w.imag();
  return short_number(w.real()) + (std::signbit(im) ? "-" : "+") + short_number(std::abs(im)) + "i";
}

cplx parse_point(const std::string& s) {
  const EntireExpr e = parse_expr(s);
  if (!(derivative(e) == EntireExpr::constant(0.0))) throw UsageError("point '" + s + "' must not depend on z");
  return e(0.0);
}

struct Source {
  std::vector<CatalogEntry> catalog;
  const CatalogEntry* entry = nullptr;
  std::optional<HarmonicMap> map;
  std::optional<ArcSet> arcs;
};

const std::vector<CatalogEntry>& catalog_of(const Options& o, std::vector<CatalogEntry>& store) {
  if (store.empty()) store = o.catalog_file.empty() ? load_builtin_catalog() : load_catalog(o.catalog_file);
  return store;
}

Source load_source(const Options& o, bool allow_arcs) {
  Source s;
  const int given = !o.map_text.empty() + !o.catalog_name.empty() + !o.map_file.empty() + !o.arcs_text.empty();
  if (given != 1)
    throw UsageError(std::string("give exactly one of --map, --catalog, --map-file") + (allow_arcs ? ", --arcs" : ""));
  if (!o.arcs_text.empty()) {
    if (!allow_arcs) throw UsageError("this command needs a map, not --arcs");
    s.arcs = parse_degree_arcs(o.arcs_text);
  } else if (!o.map_text.empty()) {
    s.map = parse_map(o.map_text);
  } else if (!o.map_file.empty()) {
    std::ifstream in(o.map_file);
    if (!in) throw std::runtime_error("cannot open " + o.map_file);
    std::string line, text;
    while (std::getline(in, line)) {
      const auto k = line.find_first_not_of(" \t");
      if (k == std::string::npos || line[k] == '#') continue;
      text = line;
      break;
    }
    s.map = parse_map(text);
  } else {
    catalog_of(o, s.catalog);
    s.entry = &find_entry(s.catalog, o.catalog_name);
    if (s.entry->map) s.map = *s.entry->map;
    if (s.entry->arcs) {
      if (!allow_arcs) throw UsageError("catalog entry " + o.catalog_name + " is a direction set, not a map");
      s.arcs = *s.entry->arcs;
    }
  }
  return s;
}

HarmonicMap need_map(const Options& o) { return *load_source(o, false).map; }

Json map_json(const HarmonicMap& f) { return Json{{"text", to_string(f)}, {"name", f.name}}; }

RangeSample take_samples(const HarmonicMap& f, const Options& o) {
  if (o.n_grid < 2) throw UsageError("--n-grid must be at least 2");
  return sample_range(f, o.R > 0 ? o.R : default_radius(f), o.n_grid, o.seed);
}

DirectionEstimate directions_of(const RangeSample& s, const Options& o) {
  DirectionOptions d;
  d.bins = o.bins;
  d.cutoffs = o.cutoffs;
  return estimate_directions(s, d);
}

const HarmonicComponent& component_of(const HarmonicMap& f, const Options& o) {
  if (o.component == "u") return f.u;
  if (o.component == "v") return f.v;
  throw UsageError("--component must be u or v");
}

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

// ---------------------------------------------------------------- commands

Result cmd_eval(const Options& o) {
  const HarmonicMap f = need_map(o);
  const cplx z = parse_point(o.z_text);
  const cplx w = f(z);
  return {Json{{"map", map_json(f)}, {"z", to_json(z)}, {"value", to_json(w)}, {"text", complex_text(w)}}};
}

Result cmd_sample(const Options& o) {
  const HarmonicMap f = need_map(o);
  const RangeSample s = take_samples(f, o);
  if (!o.out_csv.empty()) {
    std::ostringstream os;
    write_samples_csv(os, s);
    write_file(o.out_csv, os.str());
  }
  return {Json{{"map", map_json(f)}, {"sampling", summary_json(s)}}};
}

Result cmd_directions(const Options& o) {
  const Source src = load_source(o, true);
  Json out;
  ArcSet arcs;
  if (src.map) {
    const RangeSample s = take_samples(*src.map, o);
    const DirectionEstimate est = directions_of(s, o);
    arcs = est.arcs;
    out["map"] = map_json(*src.map);
    out["sampling"] = summary_json(s);
    out["estimate"] = to_json(est);
  } else {
    arcs = *src.arcs;
    out["arcs"] = to_json(arcs);
  }
  out["directions"] = to_json(arcs);
  std::optional<ArcSet> expected;
  if (!o.expect.empty()) expected = parse_degree_arcs(o.expect);
  else if (src.entry && src.entry->expected_directions) expected = src.entry->expected_directions;
  int code = 0;
  if (expected) {
    const double h = hausdorff(arcs, *expected);
    const bool match = h <= kTwoPi / 180.0;
    out["expected"] = Json{{"directions", to_json(*expected)},
                           {"hausdorff_deg", std::isfinite(h) ? Json(degrees(h)) : Json(nullptr)},
                           {"match", match}};
    if (!match) code = 1;
  }
  return {out, code};
}

Result cmd_antipodal(const Options& o) {
  const Source src = load_source(o, true);
  Json out;
  ArcSet arcs;
  std::optional<TheoremVerdict> verdict;
  if (src.map) {
    const RangeSample s = take_samples(*src.map, o);
    const DirectionEstimate est = directions_of(s, o);
    arcs = est.arcs;
    verdict = check_antipodal_theorem(*src.map, s, est, o.tol);
    out["map"] = map_json(*src.map);
    out["sampling"] = summary_json(s);
  } else {
    arcs = *src.arcs;
  }
  const ArcSet pairs = antipodal_pairs(arcs, o.tol);
  const auto reps = antipodal_representatives(pairs);
  const auto gap = antipodal_gap_alpha(arcs, o.tol);
  out["directions"] = to_json(arcs);
  out["pairs"] = to_json(pairs);
  out["representatives"] = reps;
  out["gap_alpha"] = gap ? Json(*gap) : Json(nullptr);
  out["tol"] = o.tol;
  int code = 0;
  if (verdict) {
    out["verdict"] = to_json(*verdict);
    if (!verdict->consistent()) code = 1;
  }
  if (src.entry && src.entry->expected_antipodal) {
    const bool match = *src.entry->expected_antipodal == !reps.empty();
    out["expected_antipodal"] = *src.entry->expected_antipodal;
    if (!match) code = 1;
  }
  return {out, code};
}

Result cmd_normalize(const Options& o) {
  const Source src = load_source(o, true);
  Json out;
  ArcSet arcs;
  std::optional<RangeSample> s;
  if (src.map) {
    s = take_samples(*src.map, o);
    arcs = directions_of(*s, o).arcs;
    out["map"] = map_json(*src.map);
  } else {
    arcs = *src.arcs;
  }
  const auto n = cone_avoidance_normalize(arcs, o.tol, s ? &*s : nullptr);
  out["directions"] = to_json(arcs);
  out["normalization"] = n ? to_json(*n) : Json(nullptr);
  const auto fit = fit_i_alpha(arcs, o.tol);
  out["i_alpha"] = fit ? Json(*fit) : Json(nullptr);
  out["tol"] = o.tol;
  return {out};
}

Result cmd_lewis(const Options& o) {
  const HarmonicMap f = need_map(o);
  const double R = o.R > 0 ? o.R : 20.0;
  LewisDisc d;
  if (std::isfinite(o.center_x) || std::isfinite(o.center_y) || o.disc_radius > 0) {
    if (!std::isfinite(o.center_x) || !std::isfinite(o.center_y) || !(o.disc_radius > 0))
      throw UsageError("--cx, --cy and --radius go together");
    d = lewis_disc_at(f.u, {o.center_x, o.center_y}, o.disc_radius, R);
    d.budget = o.budget;
    d.budget_met = d.C0() <= o.budget;
  } else {
    d = lewis_disc_search(f.u, R, o.budget);
  }
  return {Json{{"map", map_json(f)}, {"disc", to_json(d)}}, d.budget_met ? 0 : 1};
}

Result cmd_rescale(const Options& o) {
  const HarmonicMap f = need_map(o);
  const RescaledSequence seq = rescaled_sequence(f, o.schedule, o.budget);
  Json out{{"map", map_json(f)}, {"sequence", to_json(seq)}};
  int code = 0;
  for (const auto& inv : seq.invariants)
    if (!inv.all()) code = 1;
  if (o.check_range) {
    const RangeSample s = take_samples(f, o);
    const ArcSet D = directions_of(s, o).arcs;
    Json checks = Json::array();
    for (const auto& m : seq.maps) {
      checks.push_back(to_json(rescaled_range_check(m, D)));
    }
    out["directions"] = to_json(D);
    out["range_checks"] = checks;
  }
  return {out, code};
}

Box box_of(const Options& o) {
  if (o.box.empty()) return Box::square(0.0, o.half);
  if (o.box.size() != 4) throw UsageError("--box takes x0,x1,y0,y1");
  return Box{o.box[0], o.box[1], o.box[2], o.box[3]};
}

Result cmd_zeros(const Options& o) {
  const HarmonicMap f = need_map(o);
  const HarmonicComponent& u = component_of(f, o);
  const Box box = box_of(o);
  const double step = o.step > 0 ? o.step : std::max(box.width(), box.height()) / 128.0;
  const auto curves = trace_zero_set(u, box, step);
  if (!o.out_csv.empty()) {
    std::ostringstream os;
    write_curves_csv(os, curves);
    write_file(o.out_csv, os.str());
  }
  if (!o.svg.empty()) write_file(o.svg, zeros_svg(curves, box, o.component + " = 0: " + to_string(u)));
  Json cs = Json::array();
  std::set<int> comps;
  for (const auto& c : curves) {
    cs.push_back(to_json(c));
    comps.insert(c.component);
  }
  return {Json{{"map", map_json(f)},
               {"component", o.component},
               {"box", {box.x0, box.x1, box.y0, box.y1}},
               {"step", step},
               {"curves", cs},
               {"components", comps.size()}}};
}

Result cmd_local(const Options& o) {
  const HarmonicMap f = need_map(o);
  const cplx z = parse_point(o.z_text);
  const LocalStructure l = local_structure(component_of(f, o), z, o.r);
  return {Json{{"map", map_json(f)}, {"component", o.component}, {"z", to_json(z)}, {"structure", to_json(l)}}};
}

Result cmd_tracts(const Options& o) {
  const HarmonicMap f = need_map(o);
  const HarmonicComponent& u = component_of(f, o);
  const double R = o.R > 0 ? o.R : std::max(1.0, 2.0 * tract_dominance_radius(u));
  const TractReport t = tract_report(u, R);
  return {Json{{"map", map_json(f)}, {"component", o.component}, {"tracts", to_json(t)}},
          t.sign_changes == 2 * t.degree ? 0 : 1};
}

Result cmd_dependence(const Options& o) {
  const HarmonicMap f = need_map(o);
  const RangeSample s = take_samples(f, o);
  const DependenceReport d = detect_dependence(f, s, o.a, o.outside);
  return {Json{{"map", map_json(f)}, {"sampling", summary_json(s)}, {"dependence", to_json(d)}}};
}

Result cmd_phi(const Options& o) {
  const HarmonicMap f = need_map(o);
  const RangeSample s = take_samples(f, o);
  const PhiProfile p = phi_profile(s, o.bins == 720 ? 512 : o.bins);
  const TheoremVerdict v = phi_sublinearity_check(p);
  return {Json{{"map", map_json(f)}, {"sampling", summary_json(s)}, {"profile", to_json(p)}, {"verdict", to_json(v)}},
          v.consistent() ? 0 : 1};
}

std::vector<cplx> log2_points(std::size_t n, std::uint64_t seed) {
  std::vector<cplx> zs = quasi_random_disc(n, 100.0, seed);
  std::erase_if(zs, [](cplx z) { return std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12; });
  return zs;
}

Result cmd_check(const Options& o) {
  static const std::vector<std::string> map_theorems{"lewis", "antipodal", "halfplane", "cor-alpha",
                                                     "murdoch-kuran", "cleaning", "phi"};
  std::vector<std::string> which;
  if (o.theorem == "all") {
    which = map_theorems;
    which.push_back("log2");
  } else {
    which = {o.theorem};
  }
  Json verdicts = Json::array();
  bool consistent = true;
  std::optional<HarmonicMap> f;
  std::optional<RangeSample> s;
  std::optional<DirectionEstimate> est;
  auto need = [&] {
    if (!f) {
      f = need_map(o);
      s = take_samples(*f, o);
      est = directions_of(*s, o);
    }
  };
  Json skipped = Json::array();
  if (which.size() > 1) need();
  for (const auto& t : which) {
    TheoremVerdict v;
    try {
      if (t == "log2") {
        v = check_log2_inequalities(log2_points(o.n, o.seed));
        v.sampling.seed = o.seed;
        v.sampling.radius = 100.0;
      } else if (t == "lewis") {
        need();
        v = check_lewis_region(*f, o.C, *s);
      } else if (t == "antipodal") {
        need();
        v = check_antipodal_theorem(*f, *s, *est, o.tol);
      } else if (t == "halfplane") {
        need();
        v = check_halfplane_theorem(*f, o.alpha, *est, *s);
      } else if (t == "cor-alpha") {
        need();
        v = check_cor_alpha(*f, o.a, o.exponent, o.b, *s);
      } else if (t == "murdoch-kuran") {
        need();
        v = check_murdoch_kuran(*f, o.a, o.outside, *s);
      } else if (t == "cleaning") {
        need();
        v = cleaning_check(f->u, f->v, o.r);
      } else if (t == "phi") {
        need();
        v = phi_sublinearity_check(phi_profile(*s));
      } else {
        throw UsageError("unknown theorem '" + t + "'");
      }
    } catch (const AnalysisError& e) {
      // with --theorem all, a checker that cannot run on this map is reported and skipped
      if (which.size() == 1) throw;
      skipped.push_back({{"theorem", t}, {"error", e.what()}});
      continue;
    }
    consistent = consistent && v.consistent();
    verdicts.push_back(to_json(v));
  }
  Json out{{"verdicts", verdicts}, {"consistent", consistent}};
  if (!skipped.empty()) out["skipped"] = skipped;
  if (f) out["map"] = map_json(*f);
  return {out, consistent ? 0 : 1};
}

Result cmd_catalog(const Options& o) {
  std::vector<CatalogEntry> store;
  const auto& cat = catalog_of(o, store);
  Json entries = Json::array();
  Json checks = Json::array();
  int code = 0;
  for (const auto& e : cat) {
    if (!o.name.empty() && e.name != o.name) continue;
    char sum[17];
    std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(e.checksum));
    entries.push_back({{"name", e.name}, {"kind", e.kind}, {"payload", e.payload},
                       {"expected", e.expected}, {"tag", e.tag}, {"checksum", sum}});
    if (!o.verify) continue;
    Json c{{"name", e.name}};
    ArcSet arcs;
    if (e.map) {
      const RangeSample s = take_samples(*e.map, o);
      arcs = directions_of(s, o).arcs;
    } else {
      arcs = *e.arcs;
    }
    c["directions"] = to_json(arcs);
    bool ok = true;
    if (e.expected_directions) {
      const double h = hausdorff(arcs, *e.expected_directions);
      c["hausdorff_deg"] = std::isfinite(h) ? Json(degrees(h)) : Json(nullptr);
      ok = ok && h <= kTwoPi / 180.0;
    }
    if (e.expected_antipodal) {
      const bool found = !antipodal_representatives(antipodal_pairs(arcs, o.tol)).empty();
      c["antipodal"] = found;
      ok = ok && found == *e.expected_antipodal;
    }
    c["match"] = ok;
    if (!ok) code = 1;
    checks.push_back(c);
  }
  if (!o.name.empty() && entries.empty()) throw UsageError("no catalog entry named '" + o.name + "'");
  Json out{{"path", o.catalog_file.empty() ? builtin_catalog_path() : o.catalog_file}, {"entries", entries}};
  if (o.verify) out["verification"] = checks;
  return {out, code};
}

Result cmd_plot(const Options& o) {
  if (o.svg.empty()) throw UsageError("plot needs --svg PATH");
  const HarmonicMap f = need_map(o);
  if (o.kind == "range") {
    const RangeSample s = take_samples(f, o);
    const ArcSet arcs = directions_of(s, o).arcs;
    write_file(o.svg, range_svg(s, arcs, to_string(f)));
    return {Json{{"map", map_json(f)}, {"kind", o.kind}, {"svg", o.svg}, {"samples", s.size()},
                 {"directions", to_json(arcs)}}};
  }
  if (o.kind == "zeros") {
    const HarmonicComponent& u = component_of(f, o);
    const Box box = box_of(o);
    const double step = o.step > 0 ? o.step : std::max(box.width(), box.height()) / 128.0;
    const auto curves = trace_zero_set(u, box, step);
    write_file(o.svg, zeros_svg(curves, box, o.component + " = 0: " + to_string(u)));
    return {Json{{"map", map_json(f)}, {"kind", o.kind}, {"svg", o.svg}, {"curves", curves.size()}}};
  }
  throw UsageError("--kind must be range or zeros");
}

// ---------------------------------------------------------------- schemas

Json type_of(const std::string& t) {
  if (t == "complex")
    return Json{{"type", "object"},
                {"required", {"re", "im"}},
                {"properties", {{"re", {{"type", {"number", "null"}}}}, {"im", {{"type", {"number", "null"}}}}}}};
  if (t == "number?") return Json{{"type", {"number", "null"}}};
  return Json{{"type", t}};
}

Json schema_for(const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& required,
                const std::vector<std::pair<std::string, std::string>>& optional = {}) {
  Json props = Json::object();
  Json req = Json::array();
  for (const auto& [k, t] : required) {
    props[k] = type_of(t);
    req.push_back(k);
  }
  for (const auto& [k, t] : optional) props[k] = type_of(t);
  return Json{{"$schema", "https://json-schema.org/draft/2020-12/schema"},
              {"title", "hrange " + cmd + " output"},
              {"type", "object"},
              {"required", req},
              {"properties", props}};
}

const std::map<std::string, Json>& schemas() {
  static const std::map<std::string, Json> s = [] {
    std::map<std::string, Json> m;
    m["eval"] = schema_for("eval", {{"map", "object"}, {"z", "complex"}, {"value", "complex"}, {"text", "string"}});
    m["sample"] = schema_for("sample", {{"map", "object"}, {"sampling", "object"}});
    m["directions"] = schema_for("directions", {{"directions", "object"}},
                                 {{"map", "object"}, {"sampling", "object"}, {"estimate", "object"},
                                  {"arcs", "object"}, {"expected", "object"}});
    m["antipodal"] = schema_for("antipodal",
                                {{"directions", "object"}, {"pairs", "object"}, {"representatives", "array"},
                                 {"gap_alpha", "number?"}, {"tol", "number"}},
                                {{"map", "object"}, {"sampling", "object"}, {"verdict", "object"},
                                 {"expected_antipodal", "boolean"}});
    m["normalize"] = schema_for("normalize",
                                {{"directions", "object"}, {"normalization", "object"}, {"i_alpha", "number?"},
                                 {"tol", "number"}},
                                {{"map", "object"}});
    m["normalize"]["properties"]["normalization"] = Json{{"type", {"object", "null"}}};
    m["lewis-discs"] = schema_for("lewis-discs", {{"map", "object"}, {"disc", "object"}});
    m["rescale"] = schema_for("rescale", {{"map", "object"}, {"sequence", "object"}},
                              {{"directions", "object"}, {"range_checks", "array"}});
    m["zeros"] = schema_for("zeros", {{"map", "object"}, {"component", "string"}, {"box", "array"},
                                      {"step", "number"}, {"curves", "array"}, {"components", "integer"}});
    m["local-structure"] = schema_for("local-structure", {{"map", "object"}, {"component", "string"},
                                                          {"z", "complex"}, {"structure", "object"}});
    m["tracts"] = schema_for("tracts", {{"map", "object"}, {"component", "string"}, {"tracts", "object"}});
    m["dependence"] = schema_for("dependence", {{"map", "object"}, {"sampling", "object"}, {"dependence", "object"}});
    m["phi"] = schema_for("phi", {{"map", "object"}, {"sampling", "object"}, {"profile", "object"}, {"verdict", "object"}});
    m["check"] = schema_for("check", {{"verdicts", "array"}, {"consistent", "boolean"}},
                            {{"map", "object"}, {"skipped", "array"}});
    m["catalog"] = schema_for("catalog", {{"path", "string"}, {"entries", "array"}}, {{"verification", "array"}});
    m["plot"] = schema_for("plot", {{"map", "object"}, {"kind", "string"}, {"svg", "string"}},
                           {{"samples", "integer"}, {"curves", "integer"}, {"directions", "object"}});
    return m;
  }();
  return s;
}

// ---------------------------------------------------------------- config file

const std::set<std::string> kFlags{"schema", "check-range", "verify"};

// Turns key=value lines into flags appended after the command line; flags
// given explicitly win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[k + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k + 2));
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  auto given = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (given(key)) continue;
    if (kFlags.count(key)) {
      if (value == "true" || value == "1") args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// ---------------------------------------------------------------- wiring

void add_map_source(CLI::App* c, Options& o, bool arcs) {
  c->add_option("--map", o.map_text, "map as \"u=re(<expr>); v=im(<expr>)\"");
  c->add_option("--catalog", o.catalog_name, "catalog entry name");
  c->add_option("--map-file", o.map_file, "file holding the map text");
  c->add_option("--catalog-file", o.catalog_file, "alternative catalog file");
  if (arcs) c->add_option("--arcs", o.arcs_text, "direction set in degrees, e.g. \"180,-90..90\"");
}

void add_sampling(CLI::App* c, Options& o) {
  c->add_option("--R", o.R, "sampling radius (default 100 for polynomials, 30 otherwise)");
  c->add_option("--n-grid", o.n_grid, "polar grid size n (n x n grid plus n^2 quasi-random points)");
  c->add_option("--seed", o.seed, "seed for the quasi-random points");
}

void add_directions(CLI::App* c, Options& o) {
  c->add_option("--bins", o.bins, "direction histogram bins");
  c->add_option("--cutoffs", o.cutoffs, "increasing |w - f(0)| cutoffs")->delimiter(',');
  c->add_option("--tol", o.tol, "angular tolerance in radians");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Asymptotic directions, zero sets and theorem checks for entire harmonic maps"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<Result(const Options&)>> run;

  auto sub = [&](const std::string& name, const std::string& help, std::function<Result(const Options&)> fn) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_flag("--schema", o.schema, "print the JSON schema of the output and exit");
    run[name] = std::move(fn);
    return c;
  };

  {
    auto* c = sub("eval", "evaluate f at a point", cmd_eval);
    add_map_source(c, o, false);
    c->add_option("--z", o.z_text, "point, e.g. 1+2*i");
  }
  {
    auto* c = sub("sample", "sample the range on a disc", cmd_sample);
    add_map_source(c, o, false);
    add_sampling(c, o);
    c->add_option("--out", o.out_csv, "CSV of samples");
  }
  {
    auto* c = sub("directions", "estimate the asymptotic direction set", cmd_directions);
    add_map_source(c, o, true);
    add_sampling(c, o);
    add_directions(c, o);
    c->add_option("--expect", o.expect, "expected directions in degrees; mismatch over 2 degrees exits 1");
  }
  {
    auto* c = sub("antipodal", "antipodal direction pairs", cmd_antipodal);
    add_map_source(c, o, true);
    add_sampling(c, o);
    add_directions(c, o);
  }
  {
    auto* c = sub("normalize", "rotation and cone pair avoided by the direction set", cmd_normalize);
    add_map_source(c, o, true);
    add_sampling(c, o);
    add_directions(c, o);
  }
  {
    auto* c = sub("lewis-discs", "search for a disc with controlled oscillation", cmd_lewis);
    add_map_source(c, o, false);
    c->add_option("--R", o.R, "search radius (default 20)");
    c->add_option("--budget", o.budget, "bound for the empirical constant C0");
    c->add_option("--cx", o.center_x, "evaluate a given disc: centre real part");
    c->add_option("--cy", o.center_y, "evaluate a given disc: centre imaginary part");
    c->add_option("--radius", o.disc_radius, "evaluate a given disc: radius");
  }
  {
    auto* c = sub("rescale", "rescaled maps on an increasing radius schedule", cmd_rescale);
    add_map_source(c, o, false);
    add_sampling(c, o);
    add_directions(c, o);
    c->add_option("--schedule", o.schedule, "search radii")->delimiter(',');
    c->add_option("--budget", o.budget, "bound for the empirical constant C0");
    c->add_flag("--check-range", o.check_range, "compare rescaled ranges with the direction set of f");
  }
  {
    auto* c = sub("zeros", "trace the zero set of u or v", cmd_zeros);
    add_map_source(c, o, false);
    c->add_option("--component", o.component, "u or v");
    c->add_option("--half", o.half, "half side of the square box about 0");
    c->add_option("--box", o.box, "box x0,x1,y0,y1")->delimiter(',');
    c->add_option("--step", o.step, "vertex spacing (default box size / 128)");
    c->add_option("--out", o.out_csv, "CSV of curve vertices");
    c->add_option("--svg", o.svg, "SVG of the curves");
  }
  {
    auto* c = sub("local-structure", "multiplicity and zero rays at a zero", cmd_local);
    add_map_source(c, o, false);
    c->add_option("--component", o.component, "u or v");
    c->add_option("--z", o.z_text, "the zero");
    c->add_option("--r", o.r, "initial radius");
  }
  {
    auto* c = sub("tracts", "sign changes of a harmonic polynomial on a large circle", cmd_tracts);
    add_map_source(c, o, false);
    c->add_option("--component", o.component, "u or v");
    c->add_option("--R", o.R, "circle radius (default twice the dominance radius)");
  }
  {
    auto* c = sub("dependence", "test u = b v outside a disc", cmd_dependence);
    add_map_source(c, o, false);
    add_sampling(c, o);
    c->add_option("--a", o.a, "cone constant in |u| <= a|v|");
    c->add_option("--outside", o.outside, "only samples with |z| > this radius");
  }
  {
    auto* c = sub("phi", "upper envelope of v over slabs of u", cmd_phi);
    add_map_source(c, o, false);
    add_sampling(c, o);
    c->add_option("--bins", o.bins, "u bins (default 512)");
  }
  {
    auto* c = sub("check", "theorem hypothesis and conclusion checks", cmd_check);
    add_map_source(c, o, false);
    add_sampling(c, o);
    add_directions(c, o);
    c->add_option("--theorem", o.theorem,
                  "lewis, antipodal, halfplane, cor-alpha, murdoch-kuran, cleaning, phi, log2 or all");
    c->add_option("--C", o.C, "constant for the lewis region");
    c->add_option("--alpha", o.alpha, "half-plane direction angle (radians)");
    c->add_option("--exponent", o.exponent, "exponent in v <= a|u|^exponent + b");
    c->add_option("--a", o.a, "constant a");
    c->add_option("--b", o.b, "constant b");
    c->add_option("--outside", o.outside, "radius outside which |u| <= a|v| is required");
    c->add_option("--r", o.r, "disc radius for the cleaning check");
    c->add_option("--n", o.n, "number of points for the log2 inequalities");
  }
  {
    auto* c = sub("catalog", "list or verify the built-in examples", cmd_catalog);
    c->add_option("--catalog-file", o.catalog_file, "alternative catalog file");
    c->add_option("--name", o.name, "single entry");
    c->add_flag("--verify", o.verify, "recompute direction sets and compare with the expectations");
    add_sampling(c, o);
    add_directions(c, o);
  }
  {
    auto* c = sub("plot", "SVG of the range or of a zero set", cmd_plot);
    add_map_source(c, o, false);
    add_sampling(c, o);
    add_directions(c, o);
    c->add_option("--kind", o.kind, "range or zeros");
    c->add_option("--svg", o.svg, "output path");
    c->add_option("--component", o.component, "u or v (zeros)");
    c->add_option("--half", o.half, "half side of the box (zeros)");
    c->add_option("--box", o.box, "box x0,x1,y0,y1 (zeros)")->delimiter(',');
    c->add_option("--step", o.step, "vertex spacing (zeros)");
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (o.schema) {
    std::cout << dump(schemas().at(name));
    return 0;
  }
  try {
    const Result r = run.at(name)(o);
    std::cout << dump(r.out);
    return r.code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AnalysisError& e) {
    Json err{{"error", e.what()}};
    if (e.witness()) err["witness"] = to_json(*e.witness());
    std::cout << dump(err);
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
