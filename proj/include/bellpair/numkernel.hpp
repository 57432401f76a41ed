#pragma once

#include <array>

#include "bellpair/matrix.hpp"
#include "bellpair/tolerances.hpp"

namespace bellpair {

// Eigen-decomposition of a Hermitian matrix: values descending, vectors are
// the matching orthonormal columns.
template <int N>
struct EigenSystem {
  std::array<double, N> values;
  Mat<cdouble, N> vectors;
};

EigenSystem<2> hermitian_eigensystem(const Mat2c& h,
                                     const Tolerances& tol = kTol);
EigenSystem<4> hermitian_eigensystem(const Mat4c& h,
                                     const Tolerances& tol = kTol);

// m = left * diag(singulars) * right^T, singulars descending and >= 0,
// left and right orthogonal.
template <int N>
struct SvdResult {
  Mat<double, N> left;
  std::array<double, N> singulars;
  Mat<double, N> right;
};

SvdResult<3> real_svd(const Mat3d& m);
SvdResult<4> real_svd(const Mat4d& m);

// P^(-1/2) for Hermitian positive definite P. Throws SingularMarginalError
// if the smallest eigenvalue is below rank_tol.
Mat2c psd_inv_sqrt(const Mat2c& p, const Tolerances& tol = kTol);

// Hermitian square root with tiny negative modes clipped to zero.
Mat4c psd_sqrt(const Mat4c& p, const Tolerances& tol = kTol);

}  // namespace bellpair
