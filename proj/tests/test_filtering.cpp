#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellpair/chsh.hpp"
#include "bellpair/entanglement.hpp"
#include "bellpair/errors.hpp"
#include "bellpair/families.hpp"
#include "bellpair/filtering.hpp"
#include "bellpair/qstate.hpp"

using namespace bellpair;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

DensityMatrix bell() { return DensityMatrix::unchecked(projector(bell_state(0))); }

double marginal_defect(const DensityMatrix& rho) {
  const Mat2c half = 0.5 * Mat2c::identity();
  return frobenius_norm(reduced_a(rho.mat()) - half) +
         frobenius_norm(reduced_b(rho.mat()) - half);
}

}  // namespace

TEST_CASE("apply_filter: identity, filtered Bell, annihilation") {
  const auto rho = sample_state(61, StateKind::kMixedHs);
  const auto [same, p] = apply_filter(rho, LocalFilter{});
  CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(same.mat() - rho.mat()) < 1e-12);

  LocalFilter half_one;
  half_one.A(1, 1) = 0.5;
  const auto [filtered, prob] = apply_filter(bell(), half_one);
  CHECK(prob == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(concurrence(filtered).value == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(purity(filtered) == doctest::Approx(1.0).epsilon(1e-10));

  LocalFilter annihilate;
  annihilate.A = Mat2c{};
  annihilate.A(1, 1) = 1;  // projects onto |1>_A
  Mat4c p00;
  p00(0, 0) = 1;
  CHECK_THROWS_AS(apply_filter(DensityMatrix::unchecked(p00), annihilate),
                  AnnihilatedStateError);

  // Output of a generic filter is a valid density matrix.
  Rng rng(62);
  for (int i = 0; i < 100; ++i) {
    const auto state = sample_state(Rng::derive_seed(63, i), StateKind::kMixedHs);
    const auto [out, q] = apply_filter(state, random_filter(rng));
    CHECK(validate(out.mat()).valid());
    CHECK(q > 0);
    CHECK(q <= 1 + 1e-12);
  }
}

TEST_CASE("lorentz_of_slocc: identity, SU(2) rotation block, boost") {
  CHECK(max_abs(lorentz_of_slocc(Mat2c::identity()) - Mat4d::identity()) <
        1e-13);

  Rng rng(64);
  for (int i = 0; i < 50; ++i) {
    const Mat4d l = lorentz_of_slocc(random_su2(rng));
    CHECK(l(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) {
      CHECK(std::abs(l(0, k)) < 1e-12);
      CHECK(std::abs(l(k, 0)) < 1e-12);
    }
    Mat3d o;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) o(r, c) = l(r + 1, c + 1);
    CHECK(max_abs(o.transpose() * o - Mat3d::identity()) < 1e-12);
  }

  const double s = 2.0;
  Mat2c boost;
  boost(0, 0) = s;
  boost(1, 1) = 1 / s;
  const Mat4d l = lorentz_of_slocc(boost);
  const double ch = 0.5 * (s * s + 1 / (s * s));
  const double sh = 0.5 * (s * s - 1 / (s * s));
  CHECK(l(0, 0) == doctest::Approx(ch).epsilon(1e-12));
  CHECK(l(0, 3) == doctest::Approx(sh).epsilon(1e-12));
  CHECK(l(3, 0) == doctest::Approx(sh).epsilon(1e-12));
  CHECK(l(3, 3) == doctest::Approx(ch).epsilon(1e-12));
  CHECK(l(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l(2, 2) == doctest::Approx(1.0).epsilon(1e-12));

  Mat2c singular;
  singular(0, 0) = 1;
  CHECK_THROWS_AS(lorentz_of_slocc(singular), DomainError);
}

TEST_CASE("lorentz covariance of the correlation matrix") {
  Rng rng(65);
  for (int i = 0; i < 100; ++i) {
    const auto rho = sample_state(Rng::derive_seed(66, i), StateKind::kMixedHs);
    const LocalFilter f = random_filter(rng);
    const auto [filtered, p] = apply_filter(rho, f);

    const Mat4d la = lorentz_of_slocc(f.A);
    const Mat4d lb = lorentz_of_slocc(f.B);
    const Mat4d moved = la * to_correlation(rho).m * lb.transpose();
    const Mat4d want = (1.0 / moved(0, 0)) * moved;
    CHECK(max_abs(to_correlation(filtered).m - want) < 1e-8);
  }
}

TEST_CASE("rotation_to_unitary realizes the rotation on the Paulis") {
  Rng rng(67);
  for (int i = 0; i < 100; ++i) {
    const Mat4d l = lorentz_of_slocc(random_su2(rng));
    Mat3d o;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) o(r, c) = l(r + 1, c + 1);
    const Mat2c u = rotation_to_unitary(o);
    CHECK(max_abs(adjoint(u) * u - Mat2c::identity()) < 1e-12);
    for (int k = 1; k <= 3; ++k) {
      Mat2c want;
      for (int j = 1; j <= 3; ++j) want = want + o(j - 1, k - 1) * pauli(j);
      CHECK(max_abs(u * pauli(k) * adjoint(u) - want) < 1e-10);
    }
  }

  Mat3d reflection = Mat3d::identity();
  reflection(2, 2) = -1;
  CHECK_THROWS_AS(rotation_to_unitary(reflection), DomainError);
}

TEST_CASE("is_bell_diagonal: mixed true, product false") {
  CHECK(is_bell_diagonal(DensityMatrix::unchecked(0.25 * Mat4c::identity())));
  CHECK(is_bell_diagonal(bell_diagonal({0.4, 0.3, 0.2, 0.1})));
  Mat4c p00;
  p00(0, 0) = 1;
  CHECK_FALSE(is_bell_diagonal(DensityMatrix::unchecked(p00)));
}

TEST_CASE("normal_form: Bell-diagonal input returns immediately") {
  const auto bd = bell_diagonal({0.55, 0.2, 0.15, 0.1});
  const auto nf = normal_form(bd);
  CHECK(nf.converged);
  CHECK(nf.iterations == 0);
  CHECK(nf.success_probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(nf.state.mat() - bd.mat()) < 1e-12);
  CHECK(max_abs(nf.filter.A - Mat2c::identity()) < 1e-12);
  CHECK(max_abs(nf.filter.B - Mat2c::identity()) < 1e-12);
}

TEST_CASE("normal_form: pure Schmidt state distills to a Bell state") {
  const auto rho = pure_schmidt(0.6);
  const auto nf = normal_form(rho);
  CHECK(nf.converged);
  CHECK(concurrence(nf.state).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(max_violation(nf.state).beta == doctest::Approx(kSqrt2).epsilon(1e-8));
  CHECK(marginal_defect(nf.state) < 1e-10);

  // The cumulative filter reproduces the returned state.
  const auto [refiltered, p] = apply_filter(rho, nf.filter);
  CHECK(max_abs(refiltered.mat() - nf.state.mat()) < 1e-8);
  CHECK(p == doctest::Approx(nf.success_probability).epsilon(1e-8));
}

TEST_CASE("normal_form: random full-rank states converge to Bell diagonal") {
  for (int i = 0; i < 100; ++i) {
    const auto rho = sample_state(Rng::derive_seed(68, i), StateKind::kMixedHs);
    const auto nf = normal_form(rho);
    CHECK(nf.converged);
    CHECK(marginal_defect(nf.state) <= 1e-10);
    CHECK(is_bell_diagonal(nf.state, 1e-7));
    CHECK(nf.success_probability > 0);
    CHECK(nf.success_probability <= 1 + 1e-9);

    // An existing violation never drops under the optimal filtering. Below
    // the classical threshold beta may move either way, so clamp at 1.
    CHECK(std::max(max_violation(nf.state).beta, 1.0) >=
          std::max(max_violation(rho).beta, 1.0) - 1e-9);

    const auto [refiltered, p] = apply_filter(rho, nf.filter);
    CHECK(max_abs(refiltered.mat() - nf.state.mat()) < 1e-6);
    CHECK(p == doctest::Approx(nf.success_probability).epsilon(1e-8));
  }
}

TEST_CASE("normal_form: optimality against random probe filters") {
  // The normal form attains the orbit maximum whenever that maximum violates
  // CHSH; when it does not, no probe crosses the classical threshold either.
  // Concurrence is maximized by the same filters without any threshold.
  Rng rng(69);
  for (int i = 0; i < 20; ++i) {
    const auto rho = sample_state(Rng::derive_seed(70, i), StateKind::kMixedHs);
    const auto nf = normal_form(rho);
    const double nf_beta = max_violation(nf.state).beta;
    const double nf_c = concurrence(nf.state).value;
    for (int k = 0; k < 100; ++k) {
      const auto [probed, p] = apply_filter(rho, random_filter(rng));
      CHECK(max_violation(probed).beta <= std::max(nf_beta, 1.0) + 1e-7);
      CHECK(concurrence(probed).value <= nf_c + 1e-7);
    }
  }
}

TEST_CASE("normal_form: quasi-distillable family never converges") {
  const auto rho = gisin_family(0.55, std::numbers::pi / 5);
  const auto nf = normal_form(rho, 1e-10, 800);
  CHECK_FALSE(nf.converged);
  CHECK(nf.iterations == 800);
  // The best iterate approaches a Bell state: beta climbs above 1.
  CHECK(max_violation(nf.state).beta > 1.0);
  CHECK(max_violation(nf.state).beta >= max_violation(rho).beta);
  CHECK(nf.success_probability > 0);
}

TEST_CASE("normal_form: singular marginal throws") {
  Mat4c p01;
  p01(1, 1) = 1;  // product state |01><01|
  CHECK_THROWS_AS(normal_form(DensityMatrix::unchecked(p01)),
                  SingularMarginalError);
}

TEST_CASE("random_filter: invertible, normalized, deterministic") {
  Rng rng(71);
  Rng rng_copy(71);
  for (int i = 0; i < 50; ++i) {
    const LocalFilter f = random_filter(rng);
    const LocalFilter g = random_filter(rng_copy);
    CHECK(max_abs(f.A - g.A) == 0.0);
    CHECK(max_abs(f.B - g.B) == 0.0);
    const cdouble det_a = f.A(0, 0) * f.A(1, 1) - f.A(0, 1) * f.A(1, 0);
    CHECK(std::abs(det_a) > 1e-8);
    // Operator norm 1: largest singular value of each factor.
    const auto top = [](const Mat2c& m) {
      const Mat2c g2 = adjoint(m) * m;
      const double tr = g2(0, 0).real() + g2(1, 1).real();
      const double det = std::abs(g2(0, 0) * g2(1, 1) - g2(0, 1) * g2(1, 0));
      const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
      return std::sqrt(tr / 2 + disc);
    };
    CHECK(top(f.A) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(top(f.B) == doctest::Approx(1.0).epsilon(1e-10));
  }
}
