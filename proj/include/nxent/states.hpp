#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nxent {

using cplx = std::complex<double>;

/// Pure state of the measured mode as a truncated Fock-coefficient vector
/// c_0..c_N. Unit norm (within 1e-12) is enforced at construction.
class FockVector {
 public:
  /// Validates; throws DomainError for empty, non-finite or non-unit input.
  explicit FockVector(std::vector<cplx> coeffs);

  /// Rescales to unit norm; throws DomainError for a zero vector.
  static FockVector normalized(std::vector<cplx> coeffs);

  int truncation() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  const cplx& operator[](std::size_t n) const { return coeffs_[n]; }

  /// Highest index with |c_n|^2 above 1e-30; the grid and tail estimates
  /// are sized from this rather than from the nominal truncation.
  int support() const noexcept;

 private:
  std::vector<cplx> coeffs_;
};

struct MixtureComponent {
  double weight;
  FockVector state;
};

/// Convex combination of pure states with strictly positive weights that
/// sum to one. A FockVector converts to the trivial one-component mixture.
class MixedState {
 public:
  MixedState(const FockVector& pure);  // NOLINT: implicit by intent
  explicit MixedState(std::vector<MixtureComponent> components);

  std::span<const MixtureComponent> components() const noexcept { return components_; }
  bool is_pure() const noexcept { return components_.size() == 1; }
  int truncation() const noexcept;
  int support() const noexcept;

 private:
  std::vector<MixtureComponent> components_;
};

/// |n> in a space truncated at N; requires 0 <= n <= N.
FockVector fock_state(int n, int truncation);

/// Coherent state truncated at N and renormalized. Requires |a|^2 <= N/4 so
/// the discarded Poisson tail is below 1e-10.
FockVector coherent_state(cplx a, int truncation);

/// Uniformly distributed on the unit sphere of C^(N+1); deterministic in seed.
FockVector random_state(std::uint64_t seed, int truncation);

/// Validates weights (positive, sum to 1 within 1e-9) then renormalizes them.
MixedState mixed(std::vector<MixtureComponent> components);

}  // namespace nxent
