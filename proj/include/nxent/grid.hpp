#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nxent {

/// Uniform rectangular sampling of the (xi, k) outcome plane.
struct PhaseGrid {
  double xi_min = 0.0, xi_max = 0.0;
  double k_min = 0.0, k_max = 0.0;
  std::size_t n_xi = 0, n_k = 0;

  /// Square grid [-extent, extent]^2 with `points` samples per axis.
  static PhaseGrid symmetric(double extent, std::size_t points);

  /// Throws DomainError unless both extents are positive and finite and
  /// both counts are at least 2.
  void validate() const;

  double dxi() const noexcept { return (xi_max - xi_min) / static_cast<double>(n_xi - 1); }
  double dk() const noexcept { return (k_max - k_min) / static_cast<double>(n_k - 1); }
  double xi(std::size_t i) const noexcept { return xi_min + static_cast<double>(i) * dxi(); }
  double k(std::size_t j) const noexcept { return k_min + static_cast<double>(j) * dk(); }
  std::size_t size() const noexcept { return n_xi * n_k; }

  /// Radius of the largest origin-centred disc inside the grid (0 if the
  /// origin lies outside).
  double inscribed_radius() const noexcept;

  /// True when the grid contains [-extent, extent]^2.
  bool covers(double extent) const noexcept;
};

/// Composite trapezoid weights for n equally spaced nodes of spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

/// 2D trapezoid integral of a row-major (n_xi x n_k) field.
double integrate(const PhaseGrid& grid, std::span<const double> field);

}  // namespace nxent
