#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrange/arcs.hpp"
#include "hrange/expr.hpp"

namespace hrange {

/// One line of the catalog file:
///   name|kind|payload|expected|tag|checksum
/// kind is "map" (payload parsed by parse_map) or "arcs" (payload is an arc
/// list in degrees). expected holds ';'-separated key=value pairs, currently
/// "directions" (arc list) and "antipodal" (yes/no). The checksum is the
/// FNV-1a 64 hash of the first five fields joined by '|', in hex.
struct CatalogEntry {
  std::string name;
  std::string kind;
  std::string payload;
  std::string expected;
  std::string tag;
  std::uint64_t checksum = 0;

  std::optional<HarmonicMap> map;
  std::optional<ArcSet> arcs;
  std::optional<ArcSet> expected_directions;
  std::optional<bool> expected_antipodal;
};

std::uint64_t fnv1a64(std::string_view s);

/// "180, -90..90" -> {pi} u [-pi/2, pi/2]; "a..b" runs counter-clockwise.
ArcSet parse_degree_arcs(std::string_view text);

CatalogEntry parse_catalog_line(std::string_view line);
/// Skips blank lines and lines starting with '#'. Throws std::runtime_error
/// naming the line on a checksum mismatch or malformed entry.
std::vector<CatalogEntry> load_catalog(const std::string& path);
/// The catalog shipped with the sources.
std::vector<CatalogEntry> load_builtin_catalog();
std::string builtin_catalog_path();

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name);

/// The line (with checksum) for the given fields.
std::string format_catalog_line(const std::string& name, const std::string& kind,
                                const std::string& payload, const std::string& expected,
                                const std::string& tag);

}  // namespace hrange
