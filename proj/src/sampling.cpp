#include "hrange/sampling.hpp"

#include <cmath>

#include "hrange/arcs.hpp"

namespace hrange {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

namespace {

// 1/g and 1/g^2 for the plastic number g, the real root of x^3 = x + 1
constexpr double kA1 = 0.7548776662466927;
constexpr double kA2 = 0.5698402909980532;

}  // namespace

R2Sequence::R2Sequence(std::uint64_t seed) {
  std::uint64_t state = seed;
  s1_ = unit_double(state);
  s2_ = unit_double(state);
}

std::pair<double, double> R2Sequence::operator()(std::uint64_t k) const {
  // k * a mod 1 computed through the fractional part to stay accurate for large k
  const double kd = static_cast<double>(k);
  double x = s1_ + std::fmod(kd * kA1, 1.0);
  double y = s2_ + std::fmod(kd * kA2, 1.0);
  x -= std::floor(x);
  y -= std::floor(y);
  return {x, y};
}

std::vector<cplx> quasi_random_disc(std::size_t n, double R, std::uint64_t seed) {
  const R2Sequence seq(seed);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto [a, b] = seq(k + 1);
    out[k] = std::polar(R * std::sqrt(a), kTwoPi * b);
  }
  return out;
}

}  // namespace hrange
