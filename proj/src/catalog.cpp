#include "hrange/catalog.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <stdexcept>

#ifndef HRANGE_CATALOG_PATH
#define HRANGE_CATALOG_PATH "data/catalog.txt"
#endif

namespace hrange {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == sep) {
      out.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  }
  return out;
}

double parse_degrees(std::string_view s) {
  s = trim(s);
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad angle '" + std::string(s) + "'");
  return x * std::numbers::pi / 180.0;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ArcSet parse_degree_arcs(std::string_view text) {
  ArcSet out;
  if (trim(text).empty()) return out;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out = out.unite(ArcSet::point(parse_degrees(item)));
      continue;
    }
    const double a = parse_degrees(item.substr(0, dots));
    const double b = parse_degrees(item.substr(dots + 2));
    if (b < a) throw std::invalid_argument("arc '" + std::string(item) + "' runs backwards");
    out = out.unite(b - a >= kTwoPi ? ArcSet::full() : ArcSet::arc(a, b - a));
  }
  return out;
}

CatalogEntry parse_catalog_line(std::string_view line) {
  const auto f = split(line, '|');
  if (f.size() != 6) throw std::runtime_error("catalog line needs 6 fields: " + std::string(line));
  CatalogEntry e;
  e.name = trim(f[0]);
  e.kind = trim(f[1]);
  e.payload = trim(f[2]);
  e.expected = trim(f[3]);
  e.tag = trim(f[4]);
  const auto sum = trim(f[5]);
  const auto [p, ec] = std::from_chars(sum.data(), sum.data() + sum.size(), e.checksum, 16);
  if (ec != std::errc{} || p != sum.data() + sum.size())
    throw std::runtime_error("bad checksum field for catalog entry " + e.name);
  const std::string body = e.name + "|" + e.kind + "|" + e.payload + "|" + e.expected + "|" + e.tag;
  if (fnv1a64(body) != e.checksum)
    throw std::runtime_error("checksum mismatch for catalog entry " + e.name + " (expected " +
                             hex(fnv1a64(body)) + ")");

  try {
    if (e.kind == "map") {
      e.map = parse_map(e.payload);
      e.map->name = e.name;
    } else if (e.kind == "arcs") {
      e.arcs = parse_degree_arcs(e.payload);
    } else {
      throw std::runtime_error("unknown kind '" + e.kind + "'");
    }
    if (!e.expected.empty()) {
      for (std::string_view kv : split(e.expected, ';')) {
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) throw std::runtime_error("expected field without '='");
        const auto key = trim(kv.substr(0, eq)), val = trim(kv.substr(eq + 1));
        if (key == "directions") {
          e.expected_directions = parse_degree_arcs(val);
        } else if (key == "antipodal") {
          if (val != "yes" && val != "no") throw std::runtime_error("antipodal must be yes or no");
          e.expected_antipodal = val == "yes";
        } else {
          throw std::runtime_error("unknown expectation '" + std::string(key) + "'");
        }
      }
    }
  } catch (const std::exception& ex) {
    throw std::runtime_error("catalog entry " + e.name + ": " + ex.what());
  }
  return e;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  std::vector<CatalogEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      out.push_back(parse_catalog_line(t));
    } catch (const std::exception& ex) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

std::string builtin_catalog_path() {
  if (const char* p = std::getenv("HARMONIC_RANGE_CATALOG")) return p;
  return HRANGE_CATALOG_PATH;
}

std::vector<CatalogEntry> load_builtin_catalog() { return load_catalog(builtin_catalog_path()); }

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name) {
  for (const auto& e : catalog)
    if (e.name == name) return e;
  throw std::runtime_error("no catalog entry named '" + std::string(name) + "'");
}

std::string format_catalog_line(const std::string& name, const std::string& kind,
                                const std::string& payload, const std::string& expected,
                                const std::string& tag) {
  const std::string body = name + "|" + kind + "|" + payload + "|" + expected + "|" + tag;
  return body + "|" + hex(fnv1a64(body));
}

}  // namespace hrange
