#pragma once

#include <span>
#include <vector>

#include "nxent/states.hpp"
#include "nxent/transform.hpp"

namespace nxent {

/// Non-negative probabilities summing to one within 1e-9.
class DiscreteDist {
 public:
  /// Throws DomainError for empty input, entries outside [0, 1] or a sum
  /// off by more than 1e-9.
  explicit DiscreteDist(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Rectangular partition of the (xi, k) plane by strictly increasing edges.
struct BinPartition {
  std::vector<double> xi_edges;
  std::vector<double> k_edges;

  /// Edges at integer multiples of dxi (resp. dk) inside [-extent, extent].
  static BinPartition uniform(double dxi, double dk, double extent);

  void validate() const;
  std::size_t bins() const { return (xi_edges.size() - 1) * (k_edges.size() - 1); }
  double max_dxi() const;
  double max_dk() const;
};

struct BinnedDist {
  DiscreteDist probs;      // r_lm flattened row-major over (xi bin, k bin)
  double max_dxi = 0.0;    // largest bin width along xi
  double max_dk = 0.0;     // largest bin width along k
  bool has_outer_bin = false;  // last entry is the mass outside the partition
  double outer_mass = 0.0;
};

/// s_n = |c_n|^2, or sum_lambda lambda |c_n^(lambda)|^2 for mixtures.
DiscreteDist number_dist(const MixedState& state);

/// Integrates the bilinear interpolant of w over each bin. Mass outside the
/// partition above 1e-6 is appended as a flagged catch-all bin. Throws
/// DomainError when the partition reaches outside the density grid.
BinnedDist bin_probs(const PhaseDensity& w, const BinPartition& part);

}  // namespace nxent
