#include "bellpair/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "bellpair/errors.hpp"
#include "bellpair/numkernel.hpp"

namespace bellpair {

Mat4c spin_flip(const DensityMatrix& rho) {
  const Mat4c yy = kron(pauli(2), pauli(2));
  return hermitize(yy * conj(rho.mat()) * yy);
}

ConcurrenceValue concurrence(const DensityMatrix& rho) {
  const Mat4c root = psd_sqrt(rho.mat());
  const Mat4c m = hermitize(root * spin_flip(rho) * root);
  const auto es = hermitian_eigensystem(m);

  ConcurrenceValue c;
  for (int i = 0; i < 4; ++i) {
    double l = es.values[i];
    if (l < 0) l = 0;  // rounding-level negatives only; m is PSD in exact arithmetic
    c.spin_flip_spectrum[static_cast<std::size_t>(i)] = std::sqrt(l);
  }
  const auto& s = c.spin_flip_spectrum;
  c.value = std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
  return c;
}

double eof(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("eof: concurrence outside [0,1]");
  if (c == 0.0) return 0.0;
  if (c == 1.0) return 1.0;
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double negativity(const DensityMatrix& rho) {
  const auto es = hermitian_eigensystem(hermitize(partial_transpose_b(rho.mat())));
  return std::max(0.0, -2.0 * es.values[3]);
}

}  // namespace bellpair
