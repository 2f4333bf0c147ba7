#pragma once

#include <vector>

#include "hrange/expr.hpp"
#include "hrange/range.hpp"
#include "hrange/verdict.hpp"

namespace hrange {

/// Oscillation below 1e-9 (1 + max |value|) counts as constant.
bool constant_within_tolerance(const std::vector<double>& values);

SamplingInfo sampling_info(const RangeSample& s);

/// |u+ - v+| <= C and max(u, v) >= -C on every sample; conclusion: f constant.
TheoremVerdict check_lewis_region(const HarmonicMap& f, double C, const RangeSample& samples);

/// No antipodal pair of asymptotic directions; conclusion: f constant.
TheoremVerdict check_antipodal_theorem(const HarmonicMap& f, const RangeSample& samples,
                                       const DirectionEstimate& est, double tol);

/// Directions inside the closed half circle centred at e^{i alpha};
/// conclusion: cos(alpha) u + sin(alpha) v is constant.
/// A tol of zero selects two direction bins.
TheoremVerdict check_halfplane_theorem(const HarmonicMap& f, double alpha,
                                       const DirectionEstimate& est, const RangeSample& samples,
                                       double tol = 0.0);

/// v <= a |u|^alpha + b with alpha in [0, 1); conclusion: v constant.
TheoremVerdict check_cor_alpha(const HarmonicMap& f, double a, double alpha, double b,
                               const RangeSample& samples);

/// u a nonconstant harmonic polynomial and |u| <= a|v| outside D(0, R);
/// conclusion: u = b v and the range lies on a line through 0.
TheoremVerdict check_murdoch_kuran(const HarmonicMap& f, double a, double R,
                                   const RangeSample& samples);

/// |log+|z| - log+|z-1|| <= log 2 and max(log|z|, log|z-1|) >= -log 2.
/// Throws AnalysisError for a point within 1e-12 of 0 or 1.
TheoremVerdict check_log2_inequalities(const std::vector<cplx>& zs);

}  // namespace hrange
