#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hrange/catalog.hpp"
#include "hrange/io.hpp"
#include "hrange/report.hpp"

using namespace hrange;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE("catalog_io") {

TEST_CASE("degree arc lists") {
  const auto a = parse_degree_arcs("180, -90..90");
  CHECK(hausdorff(a, ArcSet::point(pi).unite(ArcSet::arc(-pi / 2, pi))) < 1e-12);
  CHECK(parse_degree_arcs("0..360").is_full());
  CHECK(parse_degree_arcs("").empty());
  CHECK(parse_degree_arcs("45,225").components().size() == 2);
  CHECK_THROWS(parse_degree_arcs("90..10"));
  CHECK_THROWS(parse_degree_arcs("abc"));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("catalog lines and tamper detection") {
  const auto line = format_catalog_line("t", "map", "u=re(z); v=im(z)", "directions=0..360", "closed-form");
  const auto e = parse_catalog_line(line);
  CHECK(e.name == "t");
  REQUIRE(e.map);
  CHECK(e.map->u(cplx(2, 3)) == 2.0);
  REQUIRE(e.expected_directions);
  CHECK(e.expected_directions->is_full());

  std::string tampered = line;
  tampered.replace(tampered.find("re(z)"), 5, "re(2*z)");
  CHECK_THROWS_WITH(parse_catalog_line(tampered), doctest::Contains("checksum mismatch"));
  CHECK_THROWS(parse_catalog_line("a|b|c"));
  CHECK_THROWS(parse_catalog_line(format_catalog_line("x", "bogus", "", "", "")));

  const std::string path = std::string(HRANGE_TEST_TMP) + "/tampered_catalog.txt";
  write_file(path, "# comment\n\n" + line + "\n" + tampered + "\n");
  CHECK_THROWS_WITH(load_catalog(path), doctest::Contains(":4:"));
}

TEST_CASE("shipped catalog") {
  const auto cat = load_builtin_catalog();
  CHECK(cat.size() >= 10);
  const auto& lewis = find_entry(cat, "lewis-cross");
  REQUIRE(lewis.arcs);
  CHECK(hausdorff(*lewis.arcs, ArcSet::points({pi / 4, pi, 3 * pi / 2})) < 1e-12);
  CHECK(lewis.expected_antipodal == false);
  const auto& wedge = find_entry(cat, "exp-wedge");
  REQUIRE(wedge.map);
  CHECK(std::abs((*wedge.map)(cplx(1, pi / 2)) - cplx(1, std::numbers::e)) < 1e-12);
  CHECK_THROWS(find_entry(cat, "no-such-entry"));
}

TEST_CASE("CSV output") {
  const auto f = parse_map("u=re(z); v=im(z^2)");
  const auto s = sample_range(f, 2.0, 64, 1, SampleOptions{.refine = false});
  std::ostringstream os;
  write_samples_csv(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,u,v");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double x, y, u, v;
    char c;
    std::istringstream row(line);
    row >> x >> c >> y >> c >> u >> c >> v;
    CHECK(x == s.z[rows].real());
    CHECK(y == s.z[rows].imag());
    CHECK(u == s.w[rows].real());
    CHECK(v == s.w[rows].imag());
    ++rows;
  }
  CHECK(rows == s.size());

  std::vector<ZeroCurve> curves{{{cplx(0, 0), cplx(1, 1)}, 0, 1.4, false}, {{cplx(2, 2)}, 1, 0, false}};
  std::ostringstream cs;
  write_curves_csv(cs, curves);
  const std::string text = cs.str();
  CHECK(text.rfind("curve,component,x,y\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("SVG output") {
  const auto f = parse_map("u=re(z); v=im(exp(z))");
  const auto s = sample_range(f, 10.0, 64, 1);
  const auto svg = range_svg(s, ArcSet::point(pi).unite(ArcSet::arc(-pi / 2, pi)), "a & b");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("a &amp; b") != std::string::npos);
  const auto z = zeros_svg({{{cplx(0, -1), cplx(0, 1)}, 0, 2, false}}, Box{}, "zeros");
  CHECK(z.find("<path") != std::string::npos);
  CHECK_THROWS(write_file("/nonexistent-dir/x.svg", svg));
}

TEST_CASE("JSON reports") {
  CHECK(dump(to_json(cplx(1, -2))) == "{\n  \"im\": -2.0,\n  \"re\": 1.0\n}\n");
  const auto a = to_json(ArcSet::arc(0, 1));
  CHECK(a["arcs"].size() == 1);
  CHECK(a["measure"].get<double>() == doctest::Approx(1.0));
  CHECK(dump(Json(std::nan(""))) == "null\n");

  TheoremVerdict v;
  v.hypothesis.fail({cplx(1, 1), 2.0, 3.0, "w"});
  const auto j = to_json(v);
  CHECK(j["hypothesis"]["holds"] == false);
  CHECK(j["hypothesis"]["witnesses"][0]["point"]["re"] == 1.0);
  CHECK(j["consistent"] == true);
}

}  // TEST_SUITE
