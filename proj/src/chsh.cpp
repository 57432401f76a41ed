#include "bellpair/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellpair/errors.hpp"
#include "bellpair/numkernel.hpp"
#include "bellpair/rng.hpp"

namespace bellpair {

namespace {

void require_unit(const Vec3& v, const char* which) {
  if (std::abs(norm(v) - 1.0) > kTol.validation)
    throw DomainError(std::string("bell_operator: vector ") + which +
                      " is not unit length");
}

Mat3d spin_block(const DensityMatrix& rho) {
  return to_correlation(rho).block().m;
}

}  // namespace

BellOperator bell_operator(const BellSettings& s) {
  require_unit(s.a, "a");
  require_unit(s.b, "b");
  require_unit(s.c, "c");
  require_unit(s.d, "d");
  Mat4c m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double w =
          0.5 * (s.a[i] * (s.c[j] + s.d[j]) + s.b[i] * (s.c[j] - s.d[j]));
      if (w != 0.0) m = m + (cdouble(w) * kron(pauli(i + 1), pauli(j + 1)));
    }
  return BellOperator{hermitize(m)};
}

double chsh_value(const DensityMatrix& rho, const BellSettings& s) {
  const Mat3d r = spin_block(rho);
  return 0.5 * (dot(s.a, mul(r, s.c + s.d)) + dot(s.b, mul(r, s.c - s.d)));
}

BetaValue max_violation(const DensityMatrix& rho) {
  const auto svd = real_svd(spin_block(rho));
  BetaValue v;
  v.sigma1 = svd.singulars[0];
  v.sigma2 = svd.singulars[1];
  v.beta = std::hypot(v.sigma1, v.sigma2);
  return v;
}

std::pair<BellSettings, BetaValue> optimal_settings(const DensityMatrix& rho) {
  const Mat3d r = spin_block(rho);
  const auto svd = real_svd(r);
  BetaValue v;
  v.sigma1 = svd.singulars[0];
  v.sigma2 = svd.singulars[1];
  v.beta = std::hypot(v.sigma1, v.sigma2);
  if (v.beta < 1e-12)
    throw DegenerateStateError(
        "optimal_settings: correlation block vanishes (beta = 0)");

  Vec3 u1, u2, v1, v2;
  for (int i = 0; i < 3; ++i) {
    u1[i] = svd.left(i, 0);
    u2[i] = svd.left(i, 1);
    v1[i] = svd.right(i, 0);
    v2[i] = svd.right(i, 1);
  }
  const double ct = v.sigma1 / v.beta, st = v.sigma2 / v.beta;
  BellSettings s;
  s.a = u1;
  s.b = u2;
  s.c = normalized(ct * v1 + st * v2);
  s.d = normalized(ct * v1 - st * v2);
  return {s, v};
}

double brute_force_beta(const DensityMatrix& rho, std::int64_t n_random,
                        bool refine, std::uint64_t seed) {
  if (n_random < 1) throw DomainError("brute_force_beta: n_random must be >= 1");
  const Mat3d r = spin_block(rho);
  Rng rng(seed);

  const auto value = [&](const BellSettings& s) {
    return 0.5 * (dot(s.a, mul(r, s.c + s.d)) + dot(s.b, mul(r, s.c - s.d)));
  };
  // Best single direction given the others; keeps the old one when the image
  // vanishes (any unit vector is then optimal).
  const auto toward = [](const Vec3& image, const Vec3& keep) {
    return norm(image) > 1e-15 ? normalized(image) : keep;
  };

  double best = 0;
  for (std::int64_t k = 0; k < n_random; ++k) {
    BellSettings s{rng.unit_vector(), rng.unit_vector(), rng.unit_vector(),
                   rng.unit_vector()};
    double cur = value(s);
    if (refine) {
      for (int sweep = 0; sweep < 500; ++sweep) {
        s.a = toward(mul(r, s.c + s.d), s.a);
        s.b = toward(mul(r, s.c - s.d), s.b);
        s.c = toward(mul_t(r, s.a + s.b), s.c);
        s.d = toward(mul_t(r, s.a - s.b), s.d);
        const double next = value(s);
        if (next - cur < 1e-12) {
          cur = next;
          break;
        }
        cur = next;
      }
    }
    best = std::max(best, cur);
  }
  return best;
}

double max_over_unitaries(const std::array<double, 4>& spectrum,
                          const BellOperator& b) {
  double sum = 0;
  for (double l : spectrum) {
    if (l < -1e-12) throw DomainError("max_over_unitaries: negative spectrum entry");
    sum += l;
  }
  if (std::abs(sum - 1.0) > kTol.validation)
    throw DomainError("max_over_unitaries: spectrum must sum to 1");

  std::array<double, 4> lam = spectrum;
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const auto es = hermitian_eigensystem(b.matrix);  // already descending
  double r = 0;
  for (int i = 0; i < 4; ++i) r += lam[static_cast<std::size_t>(i)] * es.values[i];
  return r;
}

double bell_diagonal_beta(const std::array<double, 4>& lambda) {
  double sum = 0;
  for (int i = 0; i < 4; ++i) {
    const double l = lambda[static_cast<std::size_t>(i)];
    if (l < -1e-12) throw DomainError("bell_diagonal_beta: negative eigenvalue");
    if (i > 0 && l > lambda[static_cast<std::size_t>(i - 1)] + 1e-12)
      throw DomainError("bell_diagonal_beta: eigenvalues must be sorted descending");
    sum += l;
  }
  if (std::abs(sum - 1.0) > kTol.validation)
    throw DomainError("bell_diagonal_beta: eigenvalues must sum to 1");
  return std::numbers::sqrt2 *
         std::hypot(lambda[1] - lambda[2], lambda[0] - lambda[3]);
}

}  // namespace bellpair
