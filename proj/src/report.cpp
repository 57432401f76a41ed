#include "bellpair/report.hpp"

#include "bellpair/entanglement.hpp"
#include "bellpair/errors.hpp"
#include "bellpair/filtering.hpp"

namespace bellpair {

AnalysisReport analyze_state(const DensityMatrix& rho, double nf_tol,
                             int nf_max_iter) {
  AnalysisReport r;
  r.concurrence = concurrence(rho).value;
  r.eof = eof(r.concurrence);
  r.negativity = negativity(rho);
  r.purity = purity(rho);
  r.entropy = entropy(rho);

  const BetaValue beta = max_violation(rho);
  r.beta = beta.beta;
  if (r.beta > 1e-12) {
    r.settings = optimal_settings(rho).first;
  } else {
    // R = 0: every setting quadruple attains beta = 0; report a fixed one.
    const Vec3 zhat{0, 0, 1};
    r.settings = {zhat, zhat, zhat, zhat};
  }
  r.bell_diagonal = is_bell_diagonal(rho);

  try {
    const NormalFormResult nf = normal_form(rho, nf_tol, nf_max_iter);
    r.normal_form_beta = max_violation(nf.state).beta;
    r.normal_form_converged = nf.converged;
  } catch (const SingularMarginalError&) {
    // Rank-deficient marginal: no full-rank normal form; the state itself is
    // the best known iterate.
    r.normal_form_beta = r.beta;
    r.normal_form_converged = false;
  }
  return r;
}

nlohmann::json report_to_json(const AnalysisReport& r) {
  const auto vec = [](const Vec3& v) {
    return nlohmann::json::array({v[0], v[1], v[2]});
  };
  return {{"concurrence", r.concurrence},
          {"eof", r.eof},
          {"negativity", r.negativity},
          {"purity", r.purity},
          {"entropy", r.entropy},
          {"beta", r.beta},
          {"settings",
           {{"a", vec(r.settings.a)},
            {"b", vec(r.settings.b)},
            {"c", vec(r.settings.c)},
            {"d", vec(r.settings.d)}}},
          {"bell_diagonal", r.bell_diagonal},
          {"normal_form",
           {{"beta", r.normal_form_beta}, {"converged", r.normal_form_converged}}}};
}

}  // namespace bellpair
