#include "nxent/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nxent/error.hpp"

namespace nxent {

PhaseGrid PhaseGrid::symmetric(double extent, std::size_t points) {
  PhaseGrid g{-extent, extent, -extent, extent, points, points};
  g.validate();
  return g;
}

void PhaseGrid::validate() const {
  const bool finite = std::isfinite(xi_min) && std::isfinite(xi_max) && std::isfinite(k_min) &&
                      std::isfinite(k_max);
  if (!finite || !(xi_max > xi_min) || !(k_max > k_min))
    throw DomainError("PhaseGrid: extents must be finite with max > min");
  if (n_xi < 2 || n_k < 2) throw DomainError("PhaseGrid: need at least 2 points per axis");
}

double PhaseGrid::inscribed_radius() const noexcept {
  const double r = std::min({-xi_min, xi_max, -k_min, k_max});
  return std::max(r, 0.0);
}

bool PhaseGrid::covers(double extent) const noexcept {
  const double slack = 1e-9 * std::max(1.0, extent);
  return xi_min <= -extent + slack && xi_max >= extent - slack && k_min <= -extent + slack &&
         k_max >= extent - slack;
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  if (n > 0) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

double integrate(const PhaseGrid& grid, std::span<const double> field) {
  const auto wx = trapezoid_weights(grid.n_xi, grid.dxi());
  const auto wk = trapezoid_weights(grid.n_k, grid.dk());
  double total = 0.0;
  for (std::size_t i = 0; i < grid.n_xi; ++i) {
    double row = 0.0;
    const double* f = field.data() + i * grid.n_k;
    for (std::size_t j = 0; j < grid.n_k; ++j) row += wk[j] * f[j];
    total += wx[i] * row;
  }
  return total;
}

}  // namespace nxent
