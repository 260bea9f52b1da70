#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bosecanon/canonical_integral.hpp"

namespace bosecanon {

struct SuiteReport {
  std::string name;
  double max_deviation = 0.0;
  std::string worst_case;
  int cases = 0;
  bool passed = false;
};

struct ValidationReport {
  std::int64_t max_n = 0;
  double tolerance = 0.0;
  std::vector<SuiteReport> suites;
  bool passed() const;
};

/// Runs the four self-consistency suites against `base`:
///   oracle      engine vs recursion for N = 1..max_n, T/eps in {0.5, 2, 5, 10},
///               M in {20, 40} (Z(N)/Z(N-1), <n0>, <n1>)
///   ground      ground-offset shift at fixed probe points
///   truncation  m_max against 2 m_max (m_max taken from `base` if set)
///   grid        doubled intervals per oscillation and doubled nodes
/// A suite passes when its largest relative deviation is <= tolerance.
/// max_n must lie in [1, 200].
ValidationReport validate(std::int64_t max_n, double tolerance,
                          const QuadratureConfig& base = {});

std::string format_report(const ValidationReport& report);

}  // namespace bosecanon
