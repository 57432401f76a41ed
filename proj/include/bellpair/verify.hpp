#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellpair/tolerances.hpp"

namespace bellpair {

// One Monte Carlo property: margin >= 0 means the sample satisfied the
// inequality with that much slack. A witness (state JSON) is kept for the
// worst offender so violations can be reproduced offline.
struct PropertyResult {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::int64_t allowed = 0;  // statistical properties tolerate a quota
  double worst_margin = 0;
  std::string witness;  // empty unless violated

  bool passed() const { return violations <= allowed; }
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool passed() const {
    for (const auto& p : properties)
      if (!p.passed()) return false;
    return true;
  }
};

// Region bounds (pure-state curve, sharp floor, Bell-diagonal band) plus the
// measure-level invariants (Tsirelson, settings consistency, oracle agreement).
SuiteResult run_bounds_suite(std::uint64_t seed, std::int64_t samples,
                             int threads = 1);

// Filtering: Lorentz covariance, normal-form convergence and optimality
// against random probe filters, uniqueness, hidden nonlocality.
SuiteResult run_filtering_suite(std::uint64_t seed, std::int64_t samples,
                                int threads = 1);

// Fixed-spectrum dominance of the Bell-diagonal arrangement.
SuiteResult run_spectrum_suite(std::uint64_t seed, std::int64_t samples,
                               int threads = 1);

}  // namespace bellpair
