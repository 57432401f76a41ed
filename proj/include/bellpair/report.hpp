#pragma once

#include <json.hpp>

#include "bellpair/chsh.hpp"
#include "bellpair/qstate.hpp"

namespace bellpair {

// Everything the analyze command reports about one state.
struct AnalysisReport {
  double concurrence = 0;
  double eof = 0;
  double negativity = 0;
  double purity = 0;
  double entropy = 0;
  double beta = 0;
  BellSettings settings{};  // achieves beta (z-axis placeholder when R = 0)
  bool bell_diagonal = false;
  double normal_form_beta = 0;
  bool normal_form_converged = false;
};

AnalysisReport analyze_state(const DensityMatrix& rho,
                             double nf_tol = kTol.convergence,
                             int nf_max_iter = 10000);

nlohmann::json report_to_json(const AnalysisReport& r);

}  // namespace bellpair
