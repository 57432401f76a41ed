#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellpair/qstate.hpp"

namespace bellpair {

// Pure state lambda_+ |00> + lambda_- |11> with
// lambda_+- = (sqrt(1+C) +- sqrt(1-C))/2; concurrence C, beta = sqrt(1+C^2).
DensityMatrix pure_schmidt(double c);

// p |Phi+><Phi+| + (1-p) I/4; C = max(0, (3p-1)/2), beta = p sqrt(2).
DensityMatrix werner(double p);

// Rank-2 state 1/2 [[0..],[0,1-a,C,0],[0,C,1+a,0],[0..]] on span{|01>,|10>};
// requires |a| <= sqrt(1-C^2). Violates as strongly as a pure state:
// beta = sqrt(1+C^2).
DensityMatrix rank2_family(double c, double a_param);

// C |Phi+><Phi+| + (1-C) |01><01|, C in (0,1]: minimal beta at fixed
// concurrence (sqrt(2) C for C >= 1/3); the canonical maximally entangled
// mixed state realization.
DensityMatrix mems(double c);

// p |psi_theta><psi_theta| + (1-p) |01><01| with
// |psi_theta> = cos(theta)|00> + sin(theta)|11>. The hidden-nonlocality scan
// family; also the quasi-distillable probe for the normal form.
DensityMatrix gisin_family(double p, double theta);

// The sparse extremal correlation matrix of the minimal-violation analysis:
// R~ = [[1,.,.,a],[.,x,.,.],[.,.,y,.],[b,.,.,z]].
struct ExtremalForm {
  double x = 0, y = 0, z = 0, a = 0, b = 0;
};

// The three positivity constraints: -1 <= z <= 1,
// (1+z)^2 - (a+b)^2 >= (x-y)^2, (1-z)^2 - (a-b)^2 >= (x+y)^2.
bool extremal_form_feasible(const ExtremalForm& e, double slack = 0);

// Constructive sampler: draws z, then a+-b, then x-+y inside the exact
// constraint boxes, so every draw is feasible (no rejection).
ExtremalForm sample_extremal_form(Rng& rng);

// State reconstructed from the sparse R~ plus the closed-form concurrence
// C = 1/2 max[0, |x-y| - sqrt((1-z)^2-(a-b)^2),
//               |x+y| - sqrt((1+z)^2-(a+b)^2)].
// Throws UnphysicalCorrelationsError when the constraints fail.
std::pair<DensityMatrix, double> extremal_form_state(const ExtremalForm& e);

// Bell-diagonal state with the descending spectrum on (Phi+,Phi-,Psi+,Psi-);
// maximizes beta among all states with that spectrum.
DensityMatrix spectrum_maximizer(const std::array<double, 4>& spectrum);

namespace curves {
double upper(double c);            // sqrt(1+C^2), pure states
double lower(double c);            // sqrt(2) C, sharp floor (MEMS for C >= 1/3)
double threshold(double c);        // constant 1, CHSH violation threshold
double bell_diag_lower(double c);  // sqrt(2)(2C+1)/3, Bell-diagonal floor
}  // namespace curves

struct BoundCurve {
  std::string id;
  std::function<double(double)> eval;
};

std::vector<BoundCurve> bound_curves();

enum class RegionKind {
  kMixedHs,
  kPureHaar,
  kBellDiagonal,
  kWernerLine,  // p on [1/3, 1]: the stretch lying on the Bell-diagonal floor
  kMemsLine,    // C on [1/3, 1]: the stretch saturating beta = sqrt(2) C
  kPureLine,    // C on [0, 1]
};

const char* region_kind_name(RegionKind kind);
std::optional<RegionKind> region_kind_from_name(std::string_view name);

struct RegionRecord {
  double c = 0, beta = 0, purity = 0, entropy = 0;
  RegionKind kind = RegionKind::kMixedHs;
};

// n records for the requested kind; sampled kinds draw sample i from
// sub-stream i of the seed, so the output is identical for every thread
// count. Line kinds are uniform parameter grids (endpoints included).
std::vector<RegionRecord> region_sample(std::uint64_t seed, std::int64_t n,
                                        RegionKind kind, int threads = 1);

}  // namespace bellpair
