#include "nxent/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nxent/error.hpp"
#include "nxent/kernels.hpp"

namespace nxent {
namespace {

const double kPhi0Scale = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

void require_finite(double x) {
  if (!std::isfinite(x)) throw DomainError("hermite_fn: abscissa must be finite");
}

// Walks the recurrence for one abscissa, keeping the Gaussian as a separate
// log factor and the running values rescaled by powers of two. `emit(n, v)`
// receives phi_n(x).
template <typename Emit>
void scaled_recurrence(int nmax, double x, Emit&& emit) {
  double log_scale = -0.5 * x * x;
  double p2 = kPhi0Scale;
  auto value = [&](double mant) {
    if (mant == 0.0) return 0.0;
    if (log_scale > -700.0) return mant * std::exp(log_scale);
    return std::copysign(std::exp(log_scale + std::log(std::abs(mant))), mant);
  };
  emit(0, value(p2));
  if (nmax == 0) return;
  double p1 = std::numbers::sqrt2 * x * p2;
  emit(1, value(p1));
  for (int n = 2; n <= nmax; ++n) {
    double p = x * std::sqrt(2.0 / n) * p1 - std::sqrt((n - 1.0) / n) * p2;
    p2 = p1;
    p1 = p;
    const double mag = std::max(std::abs(p1), std::abs(p2));
    if (mag > 0x1p400) {
      p1 = std::ldexp(p1, -400);
      p2 = std::ldexp(p2, -400);
      log_scale += 400.0 * std::numbers::ln2;
    }
    emit(n, value(p1));
  }
}

}  // namespace

double hermite_fn(int n, double x) {
  if (n < 0) throw DomainError("hermite_fn: index must be non-negative");
  require_finite(x);
  double result = 0.0;
  scaled_recurrence(n, x, [&](int m, double v) {
    if (m == n) result = v;
  });
  return result;
}

BasisTable basis_table(int nmax, std::span<const double> xs) {
  if (nmax < 0) throw DomainError("basis_table: nmax must be non-negative");
  for (double x : xs) require_finite(x);
  BasisTable table;
  table.nmax_ = nmax;
  table.xs_.assign(xs.begin(), xs.end());
  table.values_.assign(static_cast<std::size_t>(nmax + 1) * xs.size(), 0.0);
  const bool fast = std::all_of(xs.begin(), xs.end(), [](double x) {
    return std::abs(x) <= kernels::kFastHermiteRange;
  });
  if (fast) {
    kernels::active().hermite_table(xs, nmax, table.values_);
    return table;
  }
  const std::size_t cols = xs.size();
  for (std::size_t j = 0; j < cols; ++j) {
    scaled_recurrence(nmax, xs[j], [&](int n, double v) {
      table.values_[static_cast<std::size_t>(n) * cols + j] = v;
    });
  }
  return table;
}

}  // namespace nxent
