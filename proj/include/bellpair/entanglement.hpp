#pragma once

#include <array>

#include "bellpair/qstate.hpp"

namespace bellpair {

// Spin flip rho~ = (sy x sy) conj(rho) (sy x sy), conjugation entrywise in
// the computational basis (equivalent to the transpose for Hermitian rho).
Mat4c spin_flip(const DensityMatrix& rho);

struct ConcurrenceValue {
  double value = 0;
  // sqrt(l_1) >= ... >= sqrt(l_4), the l_i eigenvalues of sqrt(rho) rho~
  // sqrt(rho) (same spectrum as rho rho~ but Hermitian by construction).
  std::array<double, 4> spin_flip_spectrum{};
};

ConcurrenceValue concurrence(const DensityMatrix& rho);

// Entanglement of formation as a function of concurrence:
// h((1+sqrt(1-C^2))/2) with h the binary entropy in bits.
double eof(double c);

// N = max(0, -2 lambda_min(rho^T_B)); positive exactly for entangled states.
double negativity(const DensityMatrix& rho);

}  // namespace bellpair
