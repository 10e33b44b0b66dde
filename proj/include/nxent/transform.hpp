#pragma once

// The generalized number-annihilation measurement. The measured mode x is
// paired with an ancilla y prepared in |n0>; the commuting quadratures of
// a_x + a_y^dagger have joint eigenvalues (xi, k). A state f of mode x maps to
//
//   ft(xi, k) = (2 pi)^(-1/2) e^{i k xi / 2} int f(x) phi_n0(xi - x) e^{-i k x} dx
//
// and the outcome density is w(xi, k) = |ft(xi, k)|^2.

#include <cstddef>
#include <vector>

#include "nxent/grid.hpp"
#include "nxent/states.hpp"

namespace nxent {

/// Half-width of the default grid, 2 sqrt(2N + 2 n0 + 2) + 6.
double required_extent(int support, int n0);

/// 512 x 512 (by default) square grid of half-width required_extent.
PhaseGrid default_grid(int support, int n0, std::size_t points = 512);

/// Quadrature step in x for a given |k|: min(0.02, pi / (16 (|k| + 1))).
double quadrature_step(double abs_k);

/// Transform of the basis function phi_n: trapezoid rule on |x - xi/2| <= W
/// with step quadrature_step(|k|); W is 9, widened for large n or n0 until
/// the Hermite tails are negligible.
cplx transform_basis(int n, int n0, double xi, double k);

struct TransformField {
  PhaseGrid grid;
  int n0 = 0;
  std::vector<cplx> amps;  // row-major, n_xi x n_k

  const cplx& at(std::size_t i, std::size_t j) const { return amps[i * grid.n_k + j]; }
};

/// ft on every grid node. Throws GridError when the grid does not cover the
/// half-width required by the state's support.
TransformField transform_state(const FockVector& f, int n0, const PhaseGrid& grid);

/// Radial upper bound on w built from |c_n| and the displaced-number-state
/// bound on each basis transform. Used to bound the mass a grid misses.
class TailEnvelope {
 public:
  TailEnvelope() = default;
  TailEnvelope(const MixedState& state, int n0);

  /// Upper bound on w at distance r from the origin of the (xi, k) plane.
  double bound(double r) const;

  /// Bound on the integral of r^power * w^alpha outside the disc of radius R.
  double tail_integral(double alpha, double radius, int power = 0) const;

  /// Smallest half-width (in steps of 0.25) whose tail integral is below
  /// threshold.
  double suggested_extent(double alpha, double threshold, int power = 0) const;

 private:
  struct Component {
    double weight;
    std::vector<double> abs_coeffs;
  };
  std::vector<Component> components_;
  int n0_ = 0;
  int support_ = 0;
};

struct PhaseDensity {
  PhaseGrid grid;
  int n0 = 0;
  std::vector<double> w;  // row-major, n_xi x n_k
  TailEnvelope envelope;

  double at(std::size_t i, std::size_t j) const { return w[i * grid.n_k + j]; }
  double integral() const { return integrate(grid, w); }
  double max_value() const;
};

/// w = |ft|^2 for pure states and sum_lambda lambda |ft_lambda|^2 for mixtures.
PhaseDensity density(const MixedState& state, int n0, const PhaseGrid& grid);

struct EtaEstimate {
  double eta = 0.0;
  int n = 0;
  double xi = 0.0;
  double k = 0.0;
  double universal_bound = 0.0;  // (2 pi)^(-1/2)
};

/// Maximum over n <= nmax and the grid of |transform_basis(n, n0, xi, k)|,
/// then refined by golden-section search around the best node.
EtaEstimate eta_estimate(int n0, int nmax, const PhaseGrid& grid);

}  // namespace nxent
