#include "hrange/verdict.hpp"

#include <algorithm>

namespace hrange {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::lewis: return "lewis";
    case TheoremId::thm_antipodal: return "thm_antipodal";
    case TheoremId::thm_halfplane: return "thm_halfplane";
    case TheoremId::cor_alpha: return "cor_alpha";
    case TheoremId::thm_murdoch_kuran: return "thm_murdoch_kuran";
    case TheoremId::ineq_log2: return "ineq_log2";
    case TheoremId::cleaning: return "cleaning";
    case TheoremId::rescaled_range: return "rescaled_range";
    case TheoremId::phi_sublinear: return "phi_sublinear";
  }
  return "unknown";
}

void Claim::add(Witness w) {
  auto pos = std::find_if(witnesses.begin(), witnesses.end(),
                          [&](const Witness& x) { return w.severity > x.severity; });
  if (pos == witnesses.end() && witnesses.size() >= kMaxWitnesses) return;
  witnesses.insert(pos, std::move(w));
  if (witnesses.size() > kMaxWitnesses) witnesses.pop_back();
}

}  // namespace hrange
