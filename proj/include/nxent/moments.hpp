#pragma once

// First and second moments of the measured mode in the Fock basis, and of
// the outcomes (xi, k) under w. With the ancilla in |n0> the measured
// quadratures Q, P satisfy
//
//   <Q> = <q>,  <P> = <p>,  (dQ)^2 = (dq)^2 + n0 + 1/2,  (dP)^2 = (dp)^2 + n0 + 1/2,
//   (dA)^2 = (d_L a)^2 + n0 = (d_R a)^2 + n0 + 1.

#include <vector>

#include "nxent/relations.hpp"

namespace nxent {

struct MomentSet {
  double mean_q = 0.0, mean_p = 0.0;
  double var_q = 0.0, var_p = 0.0;
  cplx mean_a;
  double varL_a = 0.0;  // <a a^dagger> - |<a>|^2
  double varR_a = 0.0;  // <a^dagger a> - |<a>|^2
  double mean_n = 0.0, var_n = 0.0;
  bool truncation_warning = false;  // some component has |c_N|^2 > 1e-8
};

/// Exact moments of the truncated state from ladder-operator matrix
/// elements.
MomentSet fock_moments(const MixedState& state);

struct DensityMoments {
  double mean_Q = 0.0, mean_P = 0.0;
  double var_Q = 0.0, var_P = 0.0;
  cplx mean_A;
  double var_A = 0.0;  // variance of (xi + i k) / sqrt 2, i.e. (var_Q + var_P) / 2
};

/// Moments of xi and k under w by trapezoid integration. Throws TailError
/// when the envelope bound on the second-moment mass outside the grid is
/// not negligible.
DensityMoments density_moments(const PhaseDensity& w);

inline constexpr double kTracingTolerance = 1e-4;

/// Each tracing identity as an Equal report (lhs from w, bound from the
/// Fock-basis side), plus the number distribution recomputed from the
/// diagonal of the density matrix.
std::vector<RelationReport> check_tracing(const MixedState& state, int n0, const PhaseGrid& grid,
                                          double tolerance = kTracingTolerance);
/// Same, reusing a density already computed from `state`.
std::vector<RelationReport> check_tracing(const MixedState& state, const PhaseDensity& w,
                                          double tolerance = kTracingTolerance);

}  // namespace nxent
