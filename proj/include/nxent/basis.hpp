#pragma once

// Orthonormal Hermite functions
//   phi_n(x) = (sqrt(pi) 2^n n!)^(-1/2) exp(-x^2/2) h_n(x),
// the number-operator eigenfunctions in the position representation.

#include <span>
#include <vector>

namespace nxent {

/// phi_n(x) by the normalized three-term recurrence with the Gaussian folded
/// in. A running power-of-two scale keeps the recurrence in range, so values
/// are accurate for n <= 1000, |x| <= 50 and never NaN beyond that.
/// Throws DomainError for n < 0 or non-finite x.
double hermite_fn(int n, double x);

/// phi_0..phi_nmax sampled on a fixed set of abscissae.
class BasisTable {
 public:
  int nmax() const noexcept { return nmax_; }
  std::span<const double> xs() const noexcept { return xs_; }

  /// Row n: phi_n at every abscissa.
  std::span<const double> row(int n) const {
    return {values_.data() + static_cast<std::size_t>(n) * xs_.size(), xs_.size()};
  }
  double operator()(int n, std::size_t j) const {
    return values_[static_cast<std::size_t>(n) * xs_.size() + j];
  }

 private:
  friend BasisTable basis_table(int nmax, std::span<const double> xs);
  int nmax_ = 0;
  std::vector<double> xs_;
  std::vector<double> values_;
};

/// One recurrence pass per abscissa; entries equal hermite_fn(n, xs[j]).
BasisTable basis_table(int nmax, std::span<const double> xs);

}  // namespace nxent
