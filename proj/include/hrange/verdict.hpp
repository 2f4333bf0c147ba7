#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hrange/error.hpp"

namespace hrange {

enum class TheoremId {
  lewis,
  thm_antipodal,
  thm_halfplane,
  cor_alpha,
  thm_murdoch_kuran,
  ineq_log2,
  cleaning,
  rescaled_range,
  phi_sublinear,
};

std::string to_string(TheoremId id);

/// A concrete point backing a claim. `severity` orders witnesses, worst first.
struct Witness {
  cplx point;
  double value = 0.0;
  double severity = 0.0;
  std::string note;
};

struct Claim {
  bool holds = true;
  bool applicable = true;
  std::vector<Witness> witnesses;

  static constexpr std::size_t kMaxWitnesses = 8;

  /// Records a witness, keeping at most kMaxWitnesses of the most severe.
  void add(Witness w);
  /// Marks the claim false and records the witness.
  void fail(Witness w) {
    holds = false;
    add(std::move(w));
  }
};

struct SamplingInfo {
  std::string kind;
  double radius = 0.0;
  std::size_t samples = 0;
  int n_grid = 0;
  std::uint64_t seed = 0;
};

struct TheoremVerdict {
  TheoremId theorem = TheoremId::lewis;
  Claim hypothesis;
  Claim conclusion;
  std::map<std::string, double> params;
  std::vector<std::string> notes;
  SamplingInfo sampling;

  /// Agreement with the implication hypothesis => conclusion.
  bool consistent() const { return !hypothesis.holds || !hypothesis.applicable || conclusion.holds; }
};

}  // namespace hrange
