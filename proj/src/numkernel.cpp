#include "bellpair/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bellpair/errors.hpp"

namespace bellpair {

namespace {

template <int N>
double off_diagonal_norm(const Mat<cdouble, N>& a) {
  double s = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi for Hermitian matrices. At n <= 4 this is unconditionally
// stable and converges quadratically; a handful of sweeps reaches machine
// precision. Rotations are applied as full small-matrix products, which is
// plenty fast at this size and keeps the update obviously unitary.
template <int N>
EigenSystem<N> jacobi_hermitian(Mat<cdouble, N> a) {
  Mat<cdouble, N> v = Mat<cdouble, N>::identity();
  const double scale = std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const cdouble g = a(p, q);
        const double ag = std::abs(g);
        if (ag <= 1e-18 * scale) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * ag);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cdouble phase = g / ag;

        Mat<cdouble, N> r = Mat<cdouble, N>::identity();
        r(p, p) = c;
        r(p, q) = s * phase;
        r(q, p) = -s * std::conj(phase);
        r(q, q) = c;

        a = hermitize(adjoint(r) * a * r);
        v = v * r;
      }
    }
  }

  std::array<int, N> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenSystem<N> out;
  for (int k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <int N>
EigenSystem<N> checked_eigensystem(const Mat<cdouble, N>& h,
                                   const Tolerances& tol) {
  if (max_abs(h - adjoint(h)) > tol.validation)
    throw ValidationError("hermitian_eigensystem: input is not Hermitian");
  return jacobi_hermitian(hermitize(h));
}

// One-sided (Hestenes) Jacobi SVD: rotate column pairs of b until mutually
// orthogonal, accumulating the rotations in v. Column norms are the singular
// values, normalized columns the left vectors.
template <int N>
SvdResult<N> one_sided_jacobi(const Mat<double, N>& m) {
  Mat<double, N> b = m;
  Mat<double, N> v = Mat<double, N>::identity();
  const double scale = std::max(1.0, frobenius_norm(m));

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (int k = 0; k < N; ++k) {
          app += b(k, p) * b(k, p);
          aqq += b(k, q) * b(k, q);
          apq += b(k, p) * b(k, q);
        }
        if (std::abs(apq) <= 1e-16 * scale * scale &&
            std::abs(apq) <= 1e-15 * std::sqrt(app * aqq))
          continue;
        rotated = true;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double bp = b(k, p), bq = b(k, q);
          b(k, p) = c * bp - s * bq;
          b(k, q) = s * bp + c * bq;
          const double vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::array<double, N> sig{};
  for (int j = 0; j < N; ++j) {
    double s = 0;
    for (int k = 0; k < N; ++k) s += b(k, j) * b(k, j);
    sig[j] = std::sqrt(s);
  }

  std::array<int, N> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sig[i] > sig[j]; });

  SvdResult<N> out;
  Mat<double, N> u{};
  for (int k = 0; k < N; ++k) {
    out.singulars[k] = sig[order[k]];
    for (int i = 0; i < N; ++i) {
      out.right(i, k) = v(i, order[k]);
      u(i, k) = b(i, order[k]);
    }
  }

  // Normalize left columns; complete rank-deficient directions by
  // Gram-Schmidt against canonical basis vectors.
  for (int k = 0; k < N; ++k) {
    if (out.singulars[k] > 1e-14 * scale) {
      for (int i = 0; i < N; ++i) u(i, k) /= out.singulars[k];
      continue;
    }
    std::array<double, N> cand{};
    for (int trial = 0; trial < N; ++trial) {
      for (int i = 0; i < N; ++i) cand[i] = (i == trial) ? 1.0 : 0.0;
      for (int j = 0; j < N; ++j) {
        if (j == k) continue;
        if (j > k && out.singulars[j] <= 1e-14 * scale) continue;  // not yet set
        double proj = 0;
        for (int i = 0; i < N; ++i) proj += u(i, j) * cand[i];
        for (int i = 0; i < N; ++i) cand[i] -= proj * u(i, j);
      }
      double n = 0;
      for (double x : cand) n += x * x;
      n = std::sqrt(n);
      if (n > 0.5) {
        for (int i = 0; i < N; ++i) u(i, k) = cand[i] / n;
        break;
      }
    }
  }
  out.left = u;
  return out;
}

}  // namespace

EigenSystem<2> hermitian_eigensystem(const Mat2c& h, const Tolerances& tol) {
  return checked_eigensystem<2>(h, tol);
}

EigenSystem<4> hermitian_eigensystem(const Mat4c& h, const Tolerances& tol) {
  return checked_eigensystem<4>(h, tol);
}

SvdResult<3> real_svd(const Mat3d& m) { return one_sided_jacobi<3>(m); }

SvdResult<4> real_svd(const Mat4d& m) { return one_sided_jacobi<4>(m); }

Mat2c psd_inv_sqrt(const Mat2c& p, const Tolerances& tol) {
  const EigenSystem<2> es = hermitian_eigensystem(p, tol);
  if (es.values[1] < tol.rank_tol)
    throw SingularMarginalError("psd_inv_sqrt: eigenvalue below rank_tol");
  Mat2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out(i, j) += es.vectors(i, k) * (1.0 / std::sqrt(es.values[k])) *
                     std::conj(es.vectors(j, k));
  return out;
}

Mat4c psd_sqrt(const Mat4c& p, const Tolerances& tol) {
  const EigenSystem<4> es = hermitian_eigensystem(p, tol);
  Mat4c out;
  for (int k = 0; k < 4; ++k) {
    const double lam = std::max(0.0, es.values[k]);
    const double root = std::sqrt(lam);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out(i, j) += es.vectors(i, k) * root * std::conj(es.vectors(j, k));
  }
  return out;
}

}  // namespace bellpair
