#include "bellpair/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellpair/chsh.hpp"
#include "bellpair/entanglement.hpp"
#include "bellpair/errors.hpp"
#include "bellpair/parallel.hpp"

namespace bellpair {

namespace {

void require_range(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi))
    throw DomainError(std::string(what) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
}

}  // namespace

DensityMatrix pure_schmidt(double c) {
  require_range(c, 0, 1, "pure_schmidt: concurrence");
  const double lp = 0.5 * (std::sqrt(1 + c) + std::sqrt(1 - c));
  const double lm = 0.5 * (std::sqrt(1 + c) - std::sqrt(1 - c));
  const CVec4 psi{lp, 0, 0, lm};
  return DensityMatrix::unchecked(projector(psi));
}

DensityMatrix werner(double p) {
  require_range(p, 0, 1, "werner: mixing weight");
  const Mat4c m = cdouble(p) * projector(bell_state(0)) +
                  cdouble((1 - p) * 0.25) * Mat4c::identity();
  return DensityMatrix::unchecked(m);
}

DensityMatrix rank2_family(double c, double a_param) {
  require_range(c, 0, 1, "rank2_family: concurrence");
  if (std::abs(a_param) > std::sqrt(1 - c * c))
    throw DomainError("rank2_family: |a| exceeds sqrt(1-C^2)");
  Mat4c m;
  m(1, 1) = 0.5 * (1 - a_param);
  m(2, 2) = 0.5 * (1 + a_param);
  m(1, 2) = 0.5 * c;
  m(2, 1) = 0.5 * c;
  return DensityMatrix::unchecked(m);
}

DensityMatrix mems(double c) {
  if (!(c > 0 && c <= 1)) throw DomainError("mems: concurrence outside (0,1]");
  CVec4 sep{0, 1, 0, 0};  // |01>
  const Mat4c m =
      cdouble(c) * projector(bell_state(0)) + cdouble(1 - c) * projector(sep);
  return DensityMatrix::unchecked(m);
}

DensityMatrix gisin_family(double p, double theta) {
  require_range(p, 0, 1, "gisin_family: mixing weight");
  const CVec4 psi{std::cos(theta), 0, 0, std::sin(theta)};
  const CVec4 sep{0, 1, 0, 0};
  const Mat4c m = cdouble(p) * projector(psi) + cdouble(1 - p) * projector(sep);
  return DensityMatrix::unchecked(m);
}

bool extremal_form_feasible(const ExtremalForm& e, double slack) {
  const double sum = e.a + e.b, dif = e.a - e.b;
  const double xs = e.x + e.y, xd = e.x - e.y;
  return e.z >= -1 - slack && e.z <= 1 + slack &&
         (1 + e.z) * (1 + e.z) - sum * sum >= xd * xd - slack &&
         (1 - e.z) * (1 - e.z) - dif * dif >= xs * xs - slack;
}

ExtremalForm sample_extremal_form(Rng& rng) {
  ExtremalForm e;
  e.z = rng.uniform(-1, 1);
  const double s = rng.uniform(-(1 + e.z), 1 + e.z);  // a + b
  const double t = rng.uniform(-(1 - e.z), 1 - e.z);  // a - b
  const double rd = std::sqrt((1 + e.z) * (1 + e.z) - s * s);
  const double rs = std::sqrt((1 - e.z) * (1 - e.z) - t * t);
  const double xd = rng.uniform(-rd, rd);  // x - y
  const double xs = rng.uniform(-rs, rs);  // x + y
  e.a = 0.5 * (s + t);
  e.b = 0.5 * (s - t);
  e.x = 0.5 * (xs + xd);
  e.y = 0.5 * (xs - xd);
  return e;
}

std::pair<DensityMatrix, double> extremal_form_state(const ExtremalForm& e) {
  if (!extremal_form_feasible(e, 1e-12))
    throw UnphysicalCorrelationsError(
        "extremal_form_state: positivity constraints violated");
  CorrelationMatrix r;
  r.m(0, 0) = 1;
  r.m(1, 1) = e.x;
  r.m(2, 2) = e.y;
  r.m(3, 3) = e.z;
  r.m(0, 3) = e.a;
  r.m(3, 0) = e.b;
  const DensityMatrix rho = from_correlation(r);

  const double root_m = std::sqrt(std::max(
      0.0, (1 - e.z) * (1 - e.z) - (e.a - e.b) * (e.a - e.b)));
  const double root_p = std::sqrt(std::max(
      0.0, (1 + e.z) * (1 + e.z) - (e.a + e.b) * (e.a + e.b)));
  const double c = 0.5 * std::max({0.0, std::abs(e.x - e.y) - root_m,
                                   std::abs(e.x + e.y) - root_p});
  return {rho, c};
}

DensityMatrix spectrum_maximizer(const std::array<double, 4>& spectrum) {
  double sum = 0;
  for (double l : spectrum) {
    if (l < -1e-12) throw DomainError("spectrum_maximizer: negative entry");
    sum += l;
  }
  if (std::abs(sum - 1.0) > kTol.validation)
    throw DomainError("spectrum_maximizer: spectrum must sum to 1");
  std::array<double, 4> lam = spectrum;
  for (auto& l : lam) l = std::max(0.0, l);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return bell_diagonal(lam);
}

namespace curves {
double upper(double c) { return std::sqrt(1 + c * c); }
double lower(double c) { return std::numbers::sqrt2 * c; }
double threshold(double) { return 1.0; }
double bell_diag_lower(double c) { return std::numbers::sqrt2 * (2 * c + 1) / 3; }
}  // namespace curves

std::vector<BoundCurve> bound_curves() {
  return {{"upper", curves::upper},
          {"lower", curves::lower},
          {"threshold", curves::threshold},
          {"bell-diag-lower", curves::bell_diag_lower}};
}

const char* region_kind_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::kMixedHs: return "mixed-hs";
    case RegionKind::kPureHaar: return "pure-haar";
    case RegionKind::kBellDiagonal: return "bell-diagonal";
    case RegionKind::kWernerLine: return "werner-line";
    case RegionKind::kMemsLine: return "mems-line";
    case RegionKind::kPureLine: return "pure-line";
  }
  return "?";
}

std::optional<RegionKind> region_kind_from_name(std::string_view name) {
  for (RegionKind k : {RegionKind::kMixedHs, RegionKind::kPureHaar,
                       RegionKind::kBellDiagonal, RegionKind::kWernerLine,
                       RegionKind::kMemsLine, RegionKind::kPureLine})
    if (name == region_kind_name(k)) return k;
  return std::nullopt;
}

std::vector<RegionRecord> region_sample(std::uint64_t seed, std::int64_t n,
                                        RegionKind kind, int threads) {
  if (n < 1) throw DomainError("region_sample: need at least one sample");

  const auto grid = [n](std::int64_t i) {
    return n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const auto state_at = [&](std::int64_t i) -> DensityMatrix {
    switch (kind) {
      case RegionKind::kMixedHs:
        return sample_state(Rng::derive_seed(seed, static_cast<std::uint64_t>(i)),
                            StateKind::kMixedHs);
      case RegionKind::kPureHaar:
        return sample_state(Rng::derive_seed(seed, static_cast<std::uint64_t>(i)),
                            StateKind::kPureHaar);
      case RegionKind::kBellDiagonal:
        return sample_state(Rng::derive_seed(seed, static_cast<std::uint64_t>(i)),
                            StateKind::kBellDiagonal);
      case RegionKind::kWernerLine:
        return werner((1 + 2 * grid(i)) / 3);
      case RegionKind::kMemsLine:
        return mems((1 + 2 * grid(i)) / 3);
      case RegionKind::kPureLine:
        return pure_schmidt(grid(i));
    }
    throw DomainError("region_sample: unknown kind");
  };

  // On the named lines the grid parameter fixes the concurrence exactly, so
  // record the closed form instead of the numerically recovered value.
  const auto closed_form_c = [&](std::int64_t i) -> std::optional<double> {
    switch (kind) {
      case RegionKind::kWernerLine: return grid(i);
      case RegionKind::kMemsLine: return (1 + 2 * grid(i)) / 3;
      case RegionKind::kPureLine: return grid(i);
      default: return std::nullopt;
    }
  };

  std::vector<RegionRecord> records(static_cast<std::size_t>(n));
  for_each_index(n, threads, [&](std::int64_t i) {
    const DensityMatrix rho = state_at(i);
    RegionRecord& rec = records[static_cast<std::size_t>(i)];
    const auto exact = closed_form_c(i);
    rec.c = exact ? *exact : concurrence(rho).value;
    rec.beta = max_violation(rho).beta;
    rec.purity = purity(rho);
    rec.entropy = entropy(rho);
    rec.kind = kind;
  });
  return records;
}

}  // namespace bellpair
