#include "nxent/entropy.hpp"

#include <cmath>
#include <sstream>

#include "nxent/error.hpp"

namespace nxent {
namespace {

double pow_or_zero(double p, double alpha) {
  if (p < kZeroProbability) return 0.0;
  if (alpha == 2.0) return p * p;
  return std::pow(p, alpha);
}

double xlogx(double p) { return p < kZeroProbability ? 0.0 : p * std::log(p); }

}  // namespace

EntropyOrder::EntropyOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("entropy order must be a finite positive number");
}

double alpha_log(double x, EntropyOrder alpha) {
  if (!(x > 0.0)) throw DomainError("alpha_log: argument must be positive");
  if (alpha.is_shannon()) return std::log(x);
  const double one_minus = 1.0 - alpha.value();
  return std::expm1(one_minus * std::log(x)) / one_minus;
}

double shannon_discrete(const DiscreteDist& s) {
  double h = 0.0;
  for (double p : s.probs()) h -= xlogx(p);
  return h;
}

double power_sum(const DiscreteDist& s, EntropyOrder alpha) {
  double total = 0.0;
  for (double p : s.probs()) total += pow_or_zero(p, alpha.value());
  return total;
}

double norm_functional(const DiscreteDist& s, EntropyOrder alpha) {
  return std::pow(power_sum(s, alpha), 1.0 / alpha.value());
}

double renyi_discrete(const DiscreteDist& s, EntropyOrder alpha) {
  if (alpha.is_shannon()) return shannon_discrete(s);
  return std::log(power_sum(s, alpha)) / (1.0 - alpha.value());
}

double tsallis_discrete(const DiscreteDist& s, EntropyOrder alpha) {
  if (alpha.is_shannon()) return shannon_discrete(s);
  return (power_sum(s, alpha) - 1.0) / (1.0 - alpha.value());
}

void check_tail(const PhaseDensity& w, EntropyOrder alpha) {
  if (alpha.value() >= 1.0) return;
  const double tail = w.envelope.tail_integral(alpha.value(), w.grid.inscribed_radius());
  if (tail >= kTailThreshold) {
    const double extent = w.envelope.suggested_extent(alpha.value(), kTailThreshold);
    std::ostringstream msg;
    msg.precision(6);
    msg << "order " << alpha.value() << ": up to " << tail
        << " of the mass of w^alpha lies outside the grid; use a half-width of at least "
        << extent;
    throw TailError(msg.str(), extent);
  }
}

double power_integral(const PhaseDensity& w, EntropyOrder alpha) {
  check_tail(w, alpha);
  const double a = alpha.value();
  const auto wx = trapezoid_weights(w.grid.n_xi, w.grid.dxi());
  const auto wk = trapezoid_weights(w.grid.n_k, w.grid.dk());
  double total = 0.0;
  for (std::size_t i = 0; i < w.grid.n_xi; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < w.grid.n_k; ++j) row += wk[j] * pow_or_zero(w.at(i, j), a);
    total += wx[i] * row;
  }
  return total;
}

double norm_functional_continuous(const PhaseDensity& w, EntropyOrder alpha) {
  return std::pow(power_integral(w, alpha), 1.0 / alpha.value());
}

double shannon_continuous(const PhaseDensity& w) {
  const auto wx = trapezoid_weights(w.grid.n_xi, w.grid.dxi());
  const auto wk = trapezoid_weights(w.grid.n_k, w.grid.dk());
  double total = 0.0;
  for (std::size_t i = 0; i < w.grid.n_xi; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < w.grid.n_k; ++j) row -= wk[j] * xlogx(w.at(i, j));
    total += wx[i] * row;
  }
  return total;
}

double renyi_continuous(const PhaseDensity& w, EntropyOrder alpha) {
  if (alpha.is_shannon()) return shannon_continuous(w);
  return std::log(power_integral(w, alpha)) / (1.0 - alpha.value());
}

double tsallis_continuous(const PhaseDensity& w, EntropyOrder alpha) {
  if (alpha.is_shannon()) return shannon_continuous(w);
  return (power_integral(w, alpha) - 1.0) / (1.0 - alpha.value());
}

}  // namespace nxent
