#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hrange/arcs.hpp"
#include "hrange/range.hpp"
#include "hrange/zeros.hpp"

namespace hrange {

/// Columns x,y,u,v with round-trip precision.
void write_samples_csv(std::ostream& os, const RangeSample& s);
/// Columns curve,component,x,y; one row per vertex.
void write_curves_csv(std::ostream& os, const std::vector<ZeroCurve>& curves);

inline constexpr int kSvgSize = 800;
inline constexpr std::size_t kSvgMaxPoints = 20000;

/// Range scatter in data coordinates with the direction arcs on an outer ring.
std::string range_svg(const RangeSample& s, const ArcSet& directions, const std::string& title);
/// Zero curves inside the box.
std::string zeros_svg(const std::vector<ZeroCurve>& curves, const Box& box, const std::string& title);

/// Writes text to a file; throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace hrange
