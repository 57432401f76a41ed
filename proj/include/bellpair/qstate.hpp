#pragma once

#include <array>
#include <cstdint>

#include "bellpair/matrix.hpp"
#include "bellpair/rng.hpp"
#include "bellpair/tolerances.hpp"

namespace bellpair {

// sigma_0 .. sigma_3 (identity, x, y, z).
const Mat2c& pauli(int mu);

// Two-qubit density matrix in the basis |00>, |01>, |10>, |11>; the first
// factor is the "A" qubit. from_matrix validates (Hermitian, unit trace,
// positive within tol.validation) and clips eigenvalues in [-tol, 0) to zero,
// renormalizing, so JSON inputs with rounding noise are accepted.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Mat4c& m, const Tolerances& tol = kTol);
  // Trusted construction for internally generated states (re-Hermitized only).
  static DensityMatrix unchecked(const Mat4c& m);

  const Mat4c& mat() const { return m_; }

 private:
  explicit DensityMatrix(const Mat4c& m) : m_(m) {}
  Mat4c m_;
};

struct ValidationReport {
  double hermiticity_defect = 0;
  double trace_defect = 0;
  double min_eigenvalue = 0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool positive_ok = false;
  bool valid() const { return hermitian_ok && trace_ok && positive_ok; }
};

ValidationReport validate(const Mat4c& m, const Tolerances& tol = kTol);

// 3x3 spin block R_kl = tr(rho sigma_k x sigma_l), k,l = 1..3.
struct CorrBlock {
  Mat3d m;
};

// Full Pauli expectation table R~_{mu nu} = tr(rho sigma_mu x sigma_nu);
// entry (0,0) is the trace and equals 1.
struct CorrelationMatrix {
  Mat4d m;

  CorrBlock block() const {
    CorrBlock r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m(i, j) = m(i + 1, j + 1);
    return r;
  }
};

CorrelationMatrix to_correlation(const DensityMatrix& rho);

// Inverse map rho = 1/4 sum R~_{mu nu} sigma_mu x sigma_nu. Throws
// UnphysicalCorrelationsError when the reconstruction is not PSD.
DensityMatrix from_correlation(const CorrelationMatrix& r,
                               const Tolerances& tol = kTol);

double purity(const DensityMatrix& rho);   // tr rho^2
double entropy(const DensityMatrix& rho);  // base-2 von Neumann

enum class StateKind { kPureHaar, kMixedHs, kBellDiagonal };

// pure-haar: projector of a Haar-random state vector. mixed-hs: G G^dag
// normalized, G a 4x4 matrix of standard complex Gaussians (Hilbert-Schmidt
// measure). bell-diagonal: uniform simplex weights on the Bell projectors.
DensityMatrix sample_state(Rng& rng, StateKind kind);
DensityMatrix sample_state(std::uint64_t seed, StateKind kind);

// Bell basis: 0 Phi+ = (|00>+|11>)/sqrt2, 1 Phi-, 2 Psi+ = (|01>+|10>)/sqrt2,
// 3 Psi-.
const CVec4& bell_state(int k);

// Convex mixture of the Bell projectors with the given weights (Bell order).
DensityMatrix bell_diagonal(const std::array<double, 4>& weights);

Mat2c reduced_a(const Mat4c& m);  // trace out qubit B
Mat2c reduced_b(const Mat4c& m);  // trace out qubit A

Mat4c partial_transpose_b(const Mat4c& m);

Mat2c random_su2(Rng& rng);      // Haar on SU(2)
Mat4c random_unitary4(Rng& rng); // Haar on U(4)

}  // namespace bellpair
