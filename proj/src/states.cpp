#include "nxent/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "nxent/error.hpp"

namespace nxent {
namespace {

double norm2(std::span<const cplx> c) {
  double s = 0.0;
  for (const cplx& z : c) s += std::norm(z);
  return s;
}

}  // namespace

FockVector::FockVector(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("FockVector: coefficient list is empty");
  for (const cplx& z : coeffs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("FockVector: non-finite coefficient");
  }
  const double n2 = norm2(coeffs_);
  if (std::abs(n2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "FockVector: squared norm " << n2 << " differs from 1 by more than 1e-12";
    throw DomainError(msg.str());
  }
}

FockVector FockVector::normalized(std::vector<cplx> coeffs) {
  const double n2 = norm2(coeffs);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw DomainError("FockVector: cannot normalize a zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : coeffs) z *= inv;
  return FockVector(std::move(coeffs));
}

int FockVector::support() const noexcept {
  for (int n = truncation(); n > 0; --n) {
    if (std::norm(coeffs_[n]) > 1e-30) return n;
  }
  return 0;
}

MixedState::MixedState(const FockVector& pure) : components_{{1.0, pure}} {}

MixedState::MixedState(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("mixture: component list is empty");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw DomainError("mixture: weights must be positive and finite");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mixture: weights sum to " << total << ", expected 1 within 1e-9";
    throw DomainError(msg.str());
  }
  for (auto& c : components_) c.weight /= total;
}

int MixedState::truncation() const noexcept {
  int t = 0;
  for (const auto& c : components_) t = std::max(t, c.state.truncation());
  return t;
}

int MixedState::support() const noexcept {
  int t = 0;
  for (const auto& c : components_) t = std::max(t, c.state.support());
  return t;
}

FockVector fock_state(int n, int truncation) {
  if (n < 0 || truncation < 0 || n > truncation)
    throw DomainError("fock_state: need 0 <= n <= N");
  std::vector<cplx> c(truncation + 1, cplx{});
  c[n] = 1.0;
  return FockVector(std::move(c));
}

FockVector coherent_state(cplx a, int truncation) {
  if (truncation < 0) throw DomainError("coherent_state: N must be non-negative");
  const double mean_n = std::norm(a);
  if (mean_n > truncation / 4.0) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "coherent_state: |a|^2 = " << mean_n << " exceeds N/4 = " << truncation / 4.0
        << "; raise N to at least " << static_cast<int>(std::ceil(4.0 * mean_n));
    throw DomainError(msg.str());
  }
  std::vector<cplx> c(truncation + 1);
  c[0] = std::exp(-0.5 * mean_n);
  for (int n = 1; n <= truncation; ++n) c[n] = c[n - 1] * a / std::sqrt(static_cast<double>(n));
  return FockVector::normalized(std::move(c));
}

FockVector random_state(std::uint64_t seed, int truncation) {
  if (truncation < 0) throw DomainError("random_state: N must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> c(truncation + 1);
  for (auto& z : c) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return FockVector::normalized(std::move(c));
}

MixedState mixed(std::vector<MixtureComponent> components) {
  return MixedState(std::move(components));
}

}  // namespace nxent
