#pragma once

#include <string>
#include <vector>

#include "bosecanon/sweep.hpp"

namespace bosecanon {

enum class GapObservable { limit_gap, gc_gap, eq10_gap, eq12_gap };

std::string to_string(GapObservable observable);
GapObservable parse_gap_observable(const std::string& text);
double gap_value(const SweepRow& row, GapObservable observable);

struct ScalingFit {
  double exponent = 0.0;
  double std_error = 0.0;
  /// Per-curve intercepts of log|gap|, in the order of the temperatures fitted.
  std::vector<double> intercepts;
  int points = 0;
  int distinct_n = 0;
};

/// Least-squares slope of log|gap| against log N at one T/Tc
/// (matched to within 1e-9). Needs at least three distinct N.
ScalingFit fit_scaling(const std::vector<SweepRow>& rows, GapObservable observable,
                       double t_over_tc);

/// Common slope with a separate intercept for each T/Tc, i.e. the exponent
/// shared by several curves.
ScalingFit fit_scaling_pooled(const std::vector<SweepRow>& rows,
                              GapObservable observable,
                              const std::vector<double>& t_over_tc);

}  // namespace bosecanon
