#pragma once

#include <cstdint>
#include <utility>

#include "bellpair/qstate.hpp"
#include "bellpair/tolerances.hpp"

namespace bellpair {

// SLOCC pair: rho -> (A x B) rho (A x B)^dag / p. Invertible factors make the
// filter stochastically reversible; rescaling either factor only rescales p.
struct LocalFilter {
  Mat2c A = Mat2c::identity();
  Mat2c B = Mat2c::identity();
};

struct NormalFormResult {
  DensityMatrix state;       // Bell diagonal when converged
  LocalFilter filter;        // cumulative, both factors rescaled to op norm <= 1
  double success_probability = 1;  // tr((A x B) rho (A x B)^dag)
  int iterations = 0;
  bool converged = false;
};

// Filtered state and its success probability p = tr((A x B) rho (A x B)^dag).
// Throws AnnihilatedStateError if p falls below rank_tol.
std::pair<DensityMatrix, double> apply_filter(const DensityMatrix& rho,
                                              const LocalFilter& f);

// Lorentz representation of a det-normalized 2x2 filter factor:
// L_{mu nu} = 1/2 tr(sigma_mu M sigma_nu M^dag). Proper orthochronous; the
// correlation matrix transforms covariantly, R~' = L(A) R~ L(B)^T up to the
// renormalization by the (0,0) entry. Throws DomainError for |det M| below
// rank_tol (the input is det-normalized internally).
Mat4d lorentz_of_slocc(const Mat2c& m, const Tolerances& tol = kTol);

// SU(2) element realizing a proper 3x3 rotation o on the Bloch sphere:
// U sigma_k U^dag = sum_i o_{ik} sigma_i. Throws DomainError if o is not a
// rotation (orthogonal with det 1) within tol.validation.
Mat2c rotation_to_unitary(const Mat3d& o, const Tolerances& tol = kTol);

// True iff every off-diagonal entry of R~ has magnitude <= tol.
bool is_bell_diagonal(const DensityMatrix& rho, double tol = kTol.validation);

// Bell-diagonal normal form by alternating marginal whitening (each stage filters
// with (2 marginal)^(-1/2) on one side), then local rotations diagonalizing
// the spin block with the canonical sign convention (descending magnitudes,
// any negative sign pushed to the last entry). Bell-diagonal inputs return
// immediately with the identity filter. Quasi-distillable states never reach
// a fixed point; after max_iter the iterate with the largest Bell violation
// is returned with converged = false. Throws SingularMarginalError when a
// marginal is rank deficient (no full-rank normal form exists).
NormalFormResult normal_form(const DensityMatrix& rho,
                             double tol = kTol.convergence,
                             int max_iter = 10000);

// Random invertible filter with both factors rescaled to operator norm 1;
// probe distribution for the optimality tests.
LocalFilter random_filter(Rng& rng);

}  // namespace bellpair
