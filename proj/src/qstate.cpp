#include "bellpair/qstate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bellpair/errors.hpp"
#include "bellpair/numkernel.hpp"

namespace bellpair {

namespace {

std::array<Mat2c, 4> make_pauli() {
  std::array<Mat2c, 4> s;
  s[0] = Mat2c::identity();
  s[1](0, 1) = 1;
  s[1](1, 0) = 1;
  s[2](0, 1) = cdouble(0, -1);
  s[2](1, 0) = cdouble(0, 1);
  s[3](0, 0) = 1;
  s[3](1, 1) = -1;
  return s;
}

std::array<CVec4, 4> make_bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  std::array<CVec4, 4> b{};
  b[0] = {r, 0, 0, r};    // Phi+
  b[1] = {r, 0, 0, -r};   // Phi-
  b[2] = {0, r, r, 0};    // Psi+
  b[3] = {0, r, -r, 0};   // Psi-
  return b;
}

Mat4c pauli_tensor(int mu, int nu) { return kron(pauli(mu), pauli(nu)); }

double real_trace_product(const Mat4c& a, const Mat4c& b) {
  // Re tr(a b); both Hermitian in every use here, so the trace is real.
  double s = 0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      s += (a(i, k) * b(k, i)).real();
  return s;
}

}  // namespace

const Mat2c& pauli(int mu) {
  static const std::array<Mat2c, 4> s = make_pauli();
  return s[static_cast<std::size_t>(mu)];
}

const CVec4& bell_state(int k) {
  static const std::array<CVec4, 4> b = make_bell_basis();
  return b[static_cast<std::size_t>(k)];
}

ValidationReport validate(const Mat4c& m, const Tolerances& tol) {
  ValidationReport rep;
  rep.hermiticity_defect = max_abs(m - adjoint(m));
  rep.trace_defect = std::abs(m.trace() - cdouble(1.0));
  rep.hermitian_ok = rep.hermiticity_defect <= tol.validation;
  rep.trace_ok = rep.trace_defect <= tol.validation;
  if (rep.hermitian_ok) {
    const auto es = hermitian_eigensystem(hermitize(m), tol);
    rep.min_eigenvalue = es.values[3];
  } else {
    rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  }
  rep.positive_ok = rep.hermitian_ok && rep.min_eigenvalue >= -tol.validation;
  return rep;
}

DensityMatrix DensityMatrix::from_matrix(const Mat4c& m, const Tolerances& tol) {
  const ValidationReport rep = validate(m, tol);
  if (!rep.hermitian_ok)
    throw ValidationError("density matrix is not Hermitian (defect " +
                          std::to_string(rep.hermiticity_defect) + ")");
  if (!rep.trace_ok)
    throw ValidationError("density matrix trace differs from 1 (defect " +
                          std::to_string(rep.trace_defect) + ")");
  if (!rep.positive_ok)
    throw ValidationError("density matrix has eigenvalue " +
                          std::to_string(rep.min_eigenvalue));

  Mat4c h = hermitize(m);
  if (rep.min_eigenvalue < 0) {
    // Clip rounding-level negative modes and renormalize.
    const auto es = hermitian_eigensystem(h, tol);
    Mat4c rebuilt;
    double total = 0;
    for (int k = 0; k < 4; ++k) total += std::max(0.0, es.values[k]);
    for (int k = 0; k < 4; ++k) {
      const double lam = std::max(0.0, es.values[k]) / total;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          rebuilt(i, j) += es.vectors(i, k) * lam * std::conj(es.vectors(j, k));
    }
    h = hermitize(rebuilt);
  }
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::unchecked(const Mat4c& m) {
  return DensityMatrix(hermitize(m));
}

CorrelationMatrix to_correlation(const DensityMatrix& rho) {
  CorrelationMatrix r;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      r.m(mu, nu) = real_trace_product(rho.mat(), pauli_tensor(mu, nu));
  r.m(0, 0) = 1.0;
  return r;
}

DensityMatrix from_correlation(const CorrelationMatrix& r, const Tolerances& tol) {
  if (std::abs(r.m(0, 0) - 1.0) > tol.validation)
    throw ValidationError("correlation matrix entry (0,0) must be 1");
  Mat4c m;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      m = m + (cdouble(0.25 * r.m(mu, nu)) * pauli_tensor(mu, nu));
  const ValidationReport rep = validate(m, tol);
  if (!rep.positive_ok)
    throw UnphysicalCorrelationsError(
        "correlations reconstruct to a non-positive matrix (min eigenvalue " +
        std::to_string(rep.min_eigenvalue) + ")");
  return DensityMatrix::from_matrix(m, tol);
}

double purity(const DensityMatrix& rho) {
  return real_trace_product(rho.mat(), rho.mat());
}

double entropy(const DensityMatrix& rho) {
  const auto es = hermitian_eigensystem(rho.mat());
  double h = 0;
  for (double lam : es.values)
    if (lam > 0) h -= lam * std::log2(lam);
  return h;
}

DensityMatrix sample_state(Rng& rng, StateKind kind) {
  switch (kind) {
    case StateKind::kPureHaar: {
      CVec4 psi;
      for (auto& x : psi) x = rng.cgaussian();
      return DensityMatrix::unchecked(projector(normalized(psi)));
    }
    case StateKind::kMixedHs: {
      Mat4c g;
      for (auto& x : g.e) x = rng.cgaussian();
      Mat4c w = g * adjoint(g);
      const double tr = w.trace().real();
      return DensityMatrix::unchecked(cdouble(1.0 / tr) * w);
    }
    case StateKind::kBellDiagonal:
      return bell_diagonal(rng.simplex4());
  }
  throw DomainError("sample_state: unknown kind");
}

DensityMatrix sample_state(std::uint64_t seed, StateKind kind) {
  Rng rng(seed);
  return sample_state(rng, kind);
}

DensityMatrix bell_diagonal(const std::array<double, 4>& weights) {
  double total = 0;
  for (double w : weights) {
    if (w < -kTol.validation) throw DomainError("bell_diagonal: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw DomainError("bell_diagonal: weights must sum to 1");
  Mat4c m;
  for (int k = 0; k < 4; ++k)
    m = m + (cdouble(weights[k] / total) * projector(bell_state(k)));
  return DensityMatrix::unchecked(m);
}

Mat2c reduced_a(const Mat4c& m) {
  Mat2c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = m(2 * i + 0, 2 * j + 0) + m(2 * i + 1, 2 * j + 1);
  return r;
}

Mat2c reduced_b(const Mat4c& m) {
  Mat2c r;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      r(k, l) = m(0 + k, 0 + l) + m(2 + k, 2 + l);
  return r;
}

Mat4c partial_transpose_b(const Mat4c& m) {
  Mat4c r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
  return r;
}

Mat2c random_su2(Rng& rng) {
  // Unit quaternion from four Gaussians; U = w I - i (x sx + y sy + z sz).
  double w, x, y, z, n;
  do {
    w = rng.gaussian();
    x = rng.gaussian();
    y = rng.gaussian();
    z = rng.gaussian();
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-12);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  Mat2c u;
  u(0, 0) = cdouble(w, -z);
  u(0, 1) = cdouble(-y, -x);
  u(1, 0) = cdouble(y, -x);
  u(1, 1) = cdouble(w, z);
  return u;
}

Mat4c random_unitary4(Rng& rng) {
  // Ginibre matrix followed by modified Gram-Schmidt; Haar-distributed.
  Mat4c g;
  for (auto& x : g.e) x = rng.cgaussian();
  Mat4c q;
  for (int col = 0; col < 4; ++col) {
    CVec4 v{g(0, col), g(1, col), g(2, col), g(3, col)};
    for (int prev = 0; prev < col; ++prev) {
      cdouble proj = 0;
      for (int i = 0; i < 4; ++i) proj += std::conj(q(i, prev)) * v[i];
      for (int i = 0; i < 4; ++i) v[i] -= proj * q(i, prev);
    }
    const double n = norm(v);
    for (int i = 0; i < 4; ++i) q(i, col) = v[i] / n;
  }
  return q;
}

}  // namespace bellpair
