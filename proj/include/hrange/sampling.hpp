#pragma once

#include <cstdint>
#include <vector>

#include "hrange/error.hpp"

namespace hrange {

std::uint64_t splitmix64(std::uint64_t& state);

/// Uniform double in [0, 1) from the top 53 bits of a splitmix64 draw.
double unit_double(std::uint64_t& state);

/// Two-dimensional R2 low-discrepancy sequence with a seeded
/// Cranley-Patterson shift; point k is (frac(s1 + k a1), frac(s2 + k a2)).
class R2Sequence {
 public:
  explicit R2Sequence(std::uint64_t seed);
  std::pair<double, double> operator()(std::uint64_t k) const;

 private:
  double s1_ = 0.0;
  double s2_ = 0.0;
};

/// n area-uniform quasi-random points in the disc D(0, R).
std::vector<cplx> quasi_random_disc(std::size_t n, double R, std::uint64_t seed);

}  // namespace hrange
