#pragma once

namespace bellpair {

// Central numeric tolerances. Every module reads from one instance so the
// whole toolkit can be retuned in a single place.
struct Tolerances {
  double validation = 1e-8;    // Hermiticity / trace / positivity checks on inputs
  double convergence = 1e-10;  // iterative kernels (Jacobi sweeps, normal form)
  double rank_tol = 1e-12;     // below this an eigenvalue counts as singular
};

inline constexpr Tolerances kTol{};

// Seed used by every command and sampler when the caller does not pass one.
inline constexpr unsigned long long kDefaultSeed = 20020521ULL;

}  // namespace bellpair
