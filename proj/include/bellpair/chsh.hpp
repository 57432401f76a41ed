#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "bellpair/qstate.hpp"
#include "bellpair/tolerances.hpp"

namespace bellpair {

// Normalization convention: the Bell operator carries a 1/2, so the classical
// bound is 1 and the Tsirelson bound is sqrt(2). Most of the literature quotes
// 2 and 2*sqrt(2); multiply by 2 to compare.

struct BellSettings {
  Vec3 a, b;  // first party's two measurement directions
  Vec3 c, d;  // second party's
};

struct BellOperator {
  Mat4c matrix;  // Hermitian, traceless, no local (sigma_i x I) terms
};

struct BetaValue {
  double beta = 0;
  double sigma1 = 0, sigma2 = 0;  // two largest singular values of R
};

// B = 1/2 sum_ij [a_i (c_j + d_j) + b_i (c_j - d_j)] sigma_i x sigma_j.
BellOperator bell_operator(const BellSettings& s);

// tr(rho B(s)) = 1/2 [a^T R (c+d) + b^T R (c-d)], R the spin block.
double chsh_value(const DensityMatrix& rho, const BellSettings& s);

// Horodecki criterion: beta = sqrt(sigma1^2 + sigma2^2) from the SVD of R.
BetaValue max_violation(const DensityMatrix& rho);

// Settings achieving max_violation, built from the SVD R = U S V^T:
// a = u1, b = u2, c/d = cos(t) v1 +- sin(t) v2 with cos(t) = sigma1/beta.
// (a and b sit on the first tensor factor, matching the rows of R.)
// Throws DegenerateStateError when R vanishes (beta = 0).
std::pair<BellSettings, BetaValue> optimal_settings(const DensityMatrix& rho);

// Independent oracle: best of n_random random setting quadruples, optionally
// polished by coordinate ascent (each vector's optimum given the others is a
// normalized image under R). Deterministic for a fixed seed.
double brute_force_beta(const DensityMatrix& rho, std::int64_t n_random,
                        bool refine, std::uint64_t seed = kDefaultSeed);

// Fixed-spectrum bound: max_U tr(U rho U^dag B) = sum_i lambda_i^down b_i^down
// (doubly stochastic argument), b_i the eigenvalues of B.
double max_over_unitaries(const std::array<double, 4>& spectrum,
                          const BellOperator& b);

// Closed form for Bell-diagonal states, lambda sorted descending:
// beta = sqrt(2) sqrt((l2-l3)^2 + (l1-l4)^2).
double bell_diagonal_beta(const std::array<double, 4>& lambda);

}  // namespace bellpair
