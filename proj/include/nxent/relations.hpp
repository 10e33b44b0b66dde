#pragma once

// Inequalities between the number distribution s and the phase density w
// (or its binned version r), with 1/alpha + 1/beta = 2:
//
//   ||w||_a <= eta^(2(1-b)/b) ||s||_b,   ||s||_a <= eta^(2(1-b)/b) ||w||_b   (a > 1 > b)
//   R_alpha(w) + R_beta(s) >= ln 2 pi
//   H_alpha(w) + H_beta(s) >= ln_mu 2 pi,          mu = max(alpha, beta)
//   R_alpha(r) + R_beta(s) >= ln(2 pi / (dxi dk)),  and the Tsallis analogue.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nxent/entropy.hpp"
#include "nxent/probability.hpp"
#include "nxent/transform.hpp"

namespace nxent {

/// Orders with 1/alpha + 1/beta = 2. Either member may be the larger one.
struct ConjugatePair {
  double alpha = 1.0;
  double beta = 1.0;

  double mu() const noexcept { return std::max(alpha, beta); }
  double high() const noexcept { return std::max(alpha, beta); }
  double low() const noexcept { return std::min(alpha, beta); }
};

/// beta = alpha / (2 alpha - 1); throws DomainError for alpha <= 1/2.
ConjugatePair conjugate(double alpha);

enum class Sense { AtLeast, AtMost, Equal };

/// One checked inequality (or identity). margin >= 0 means the claim holds
/// with room to spare; pass is margin >= -tolerance.
struct RelationReport {
  std::string relation;
  std::string assignment;  // which distribution carries alpha: "w", "s", "r" or ""
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 1.0;
  int n0 = 0;
  std::vector<std::pair<std::string, double>> lhs_terms;
  double lhs = 0.0;
  double bound = 0.0;
  Sense sense = Sense::AtLeast;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool trivial = false;
  std::optional<double> eta;
  std::optional<std::pair<double, double>> bin_size;
};

/// Fills margin and pass from lhs, bound, sense and tolerance.
void settle(RelationReport& report);

inline constexpr double kRelationTolerance = 1e-5;

/// Both norm inequalities. Requires pair.high() > 1 > pair.low().
std::array<RelationReport, 2> check_riesz(const PhaseDensity& w, const DiscreteDist& s,
                                          ConjugatePair pair, double eta,
                                          double tolerance = kRelationTolerance);

/// Renyi relation with alpha on w and beta on s, then the swapped assignment.
std::array<RelationReport, 2> check_renyi_relation(const PhaseDensity& w, const DiscreteDist& s,
                                                   double alpha,
                                                   double tolerance = kRelationTolerance);
std::array<RelationReport, 2> check_renyi_relation(const MixedState& state, int n0, double alpha,
                                                   const PhaseGrid& grid,
                                                   double tolerance = kRelationTolerance);

std::array<RelationReport, 2> check_tsallis_relation(const PhaseDensity& w,
                                                     const DiscreteDist& s, double alpha,
                                                     double tolerance = kRelationTolerance);
std::array<RelationReport, 2> check_tsallis_relation(const MixedState& state, int n0,
                                                     double alpha, const PhaseGrid& grid,
                                                     double tolerance = kRelationTolerance);

/// Renyi and Tsallis relations for binned probabilities, each for both
/// assignments: {renyi r:alpha, renyi s:alpha, tsallis r:alpha, tsallis s:alpha}.
/// Reports are flagged trivial when dxi * dk >= 2 pi.
std::array<RelationReport, 4> check_binned_relations(const BinnedDist& r, const DiscreteDist& s,
                                                     double alpha, int n0,
                                                     double tolerance = kRelationTolerance);
std::array<RelationReport, 4> check_binned_relations(const MixedState& state, int n0,
                                                     double alpha, const BinPartition& part,
                                                     const PhaseGrid& grid,
                                                     double tolerance = kRelationTolerance);

struct TsallisMinimum {
  double t = 0.0;             // numerical minimizer ||w||_alpha^alpha
  double tau = 0.0;           // numerical minimizer ||s||_beta^beta
  double value = 0.0;         // g(t, tau) at the numerical minimum
  double closed_form_t = 0.0; // eta^(-2 (1 - alpha))
  double closed_form = 0.0;   // ln_alpha eta^(-2)
};

/// Minimizes g(t, tau) = (t-1)/(1-alpha) + (tau-1)/(1-beta) over t <= 1,
/// tau >= 1 and eta^(-2(1-beta)) t^(beta/alpha) <= tau. Requires alpha > 1
/// and 0 < eta^2 < 1.
TsallisMinimum tsallis_min_oracle(double alpha, double eta);

struct MinimizeOptions {
  int starts = 3;                 // random restarts (seeds seed, seed+1, ...)
  int max_sweeps = 40;
  double initial_step = 0.25;
  double min_step = 1e-3;
  std::size_t search_points = 96;  // per-axis samples of the search grid
  std::size_t report_points = 512;
  double tolerance = kRelationTolerance;
};

struct MinimizeResult {
  FockVector state;
  double objective = 0.0;  // R_alpha(w) + R_beta(s) on the report grid
  std::array<RelationReport, 2> reports;
  bool converged = false;
  int evaluations = 0;
};

/// Derivative-free search for a state with small R_alpha(w) + R_beta(s):
/// coordinate descent over amplitudes and phases, started from the best
/// number state and from `starts` random states.
MinimizeResult minimize_entropy_sum(double alpha, int n0, int truncation, std::uint64_t seed,
                                    const MinimizeOptions& options = {});

}  // namespace nxent
