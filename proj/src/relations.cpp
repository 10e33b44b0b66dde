#include "nxent/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nxent/error.hpp"

namespace nxent {
namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

RelationReport base_report(std::string relation, std::string assignment, ConjugatePair pair,
                           int n0, double tolerance) {
  RelationReport r;
  r.relation = std::move(relation);
  r.assignment = std::move(assignment);
  r.alpha = pair.alpha;
  r.beta = pair.beta;
  r.mu = pair.mu();
  r.n0 = n0;
  r.tolerance = tolerance;
  return r;
}

// Entropy-sum relation with `first` carrying order `a` and `second` order `b`.
template <typename EntFirst, typename EntSecond>
RelationReport entropy_sum(std::string relation, std::string assignment, ConjugatePair pair,
                           double a, double b, int n0, double bound, double tolerance,
                           const char* first_name, EntFirst&& first, const char* second_name,
                           EntSecond&& second) {
  RelationReport r = base_report(std::move(relation), std::move(assignment), pair, n0, tolerance);
  const double e1 = first(EntropyOrder(a));
  const double e2 = second(EntropyOrder(b));
  r.lhs_terms = {{first_name, e1}, {second_name, e2}};
  r.lhs = e1 + e2;
  r.bound = bound;
  r.sense = Sense::AtLeast;
  settle(r);
  return r;
}

template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ConjugatePair conjugate(double alpha) {
  if (!(alpha > 0.5) || !std::isfinite(alpha))
    throw DomainError("conjugate: order must exceed 1/2 (the conjugate would be non-positive)");
  if (alpha == 1.0) return {1.0, 1.0};
  return {alpha, alpha / (2.0 * alpha - 1.0)};
}

void settle(RelationReport& report) {
  switch (report.sense) {
    case Sense::AtLeast:
      report.margin = report.lhs - report.bound;
      break;
    case Sense::AtMost:
      report.margin = report.bound - report.lhs;
      break;
    case Sense::Equal:
      report.margin = -std::abs(report.lhs - report.bound);
      break;
  }
  report.pass = report.margin >= -report.tolerance;
}

std::array<RelationReport, 2> check_riesz(const PhaseDensity& w, const DiscreteDist& s,
                                          ConjugatePair pair, double eta, double tolerance) {
  const double a = pair.high(), b = pair.low();
  if (!(a > 1.0 && b < 1.0)) throw DomainError("check_riesz: need alpha > 1 > beta");
  if (!(eta > 0.0)) throw DomainError("check_riesz: eta must be positive");
  const double factor = std::pow(eta, 2.0 * (1.0 - b) / b);
  const ConjugatePair ordered{a, b};

  RelationReport first = base_report("riesz_w", "w", ordered, w.n0, tolerance);
  const double w_a = norm_functional_continuous(w, EntropyOrder(a));
  const double s_b = norm_functional(s, EntropyOrder(b));
  first.lhs_terms = {{"norm_w_alpha", w_a}, {"norm_s_beta", s_b}};
  first.lhs = w_a;
  first.bound = factor * s_b;
  first.sense = Sense::AtMost;
  first.eta = eta;
  settle(first);

  RelationReport second = base_report("riesz_s", "s", ordered, w.n0, tolerance);
  const double s_a = norm_functional(s, EntropyOrder(a));
  const double w_b = norm_functional_continuous(w, EntropyOrder(b));
  second.lhs_terms = {{"norm_s_alpha", s_a}, {"norm_w_beta", w_b}};
  second.lhs = s_a;
  second.bound = factor * w_b;
  second.sense = Sense::AtMost;
  second.eta = eta;
  settle(second);
  return {first, second};
}

std::array<RelationReport, 2> check_renyi_relation(const PhaseDensity& w, const DiscreteDist& s,
                                                   double alpha, double tolerance) {
  const ConjugatePair pair = conjugate(alpha);
  const double bound = std::log(kTwoPi);
  auto on_w = [&](EntropyOrder o) { return renyi_continuous(w, o); };
  auto on_s = [&](EntropyOrder o) { return renyi_discrete(s, o); };
  return {entropy_sum("renyi", "w", pair, pair.alpha, pair.beta, w.n0, bound, tolerance,
                      "renyi_w", on_w, "renyi_s", on_s),
          entropy_sum("renyi", "s", pair, pair.alpha, pair.beta, w.n0, bound, tolerance,
                      "renyi_s", on_s, "renyi_w", on_w)};
}

std::array<RelationReport, 2> check_renyi_relation(const MixedState& state, int n0, double alpha,
                                                   const PhaseGrid& grid, double tolerance) {
  conjugate(alpha);
  return check_renyi_relation(density(state, n0, grid), number_dist(state), alpha, tolerance);
}

std::array<RelationReport, 2> check_tsallis_relation(const PhaseDensity& w,
                                                     const DiscreteDist& s, double alpha,
                                                     double tolerance) {
  const ConjugatePair pair = conjugate(alpha);
  const double bound = alpha_log(kTwoPi, EntropyOrder(pair.mu()));
  auto on_w = [&](EntropyOrder o) { return tsallis_continuous(w, o); };
  auto on_s = [&](EntropyOrder o) { return tsallis_discrete(s, o); };
  return {entropy_sum("tsallis", "w", pair, pair.alpha, pair.beta, w.n0, bound, tolerance,
                      "tsallis_w", on_w, "tsallis_s", on_s),
          entropy_sum("tsallis", "s", pair, pair.alpha, pair.beta, w.n0, bound, tolerance,
                      "tsallis_s", on_s, "tsallis_w", on_w)};
}

std::array<RelationReport, 2> check_tsallis_relation(const MixedState& state, int n0,
                                                     double alpha, const PhaseGrid& grid,
                                                     double tolerance) {
  conjugate(alpha);
  return check_tsallis_relation(density(state, n0, grid), number_dist(state), alpha, tolerance);
}

std::array<RelationReport, 4> check_binned_relations(const BinnedDist& r, const DiscreteDist& s,
                                                     double alpha, int n0, double tolerance) {
  const ConjugatePair pair = conjugate(alpha);
  const double cell = r.max_dxi * r.max_dk;
  const double ratio = kTwoPi / cell;
  const double renyi_bound = std::log(ratio);
  const double tsallis_bound = alpha_log(ratio, EntropyOrder(pair.mu()));
  auto renyi_r = [&](EntropyOrder o) { return renyi_discrete(r.probs, o); };
  auto renyi_s = [&](EntropyOrder o) { return renyi_discrete(s, o); };
  auto tsallis_r = [&](EntropyOrder o) { return tsallis_discrete(r.probs, o); };
  auto tsallis_s = [&](EntropyOrder o) { return tsallis_discrete(s, o); };
  std::array<RelationReport, 4> out{
      entropy_sum("renyi_binned", "r", pair, pair.alpha, pair.beta, n0, renyi_bound, tolerance,
                  "renyi_r", renyi_r, "renyi_s", renyi_s),
      entropy_sum("renyi_binned", "s", pair, pair.alpha, pair.beta, n0, renyi_bound, tolerance,
                  "renyi_s", renyi_s, "renyi_r", renyi_r),
      entropy_sum("tsallis_binned", "r", pair, pair.alpha, pair.beta, n0, tsallis_bound,
                  tolerance, "tsallis_r", tsallis_r, "tsallis_s", tsallis_s),
      entropy_sum("tsallis_binned", "s", pair, pair.alpha, pair.beta, n0, tsallis_bound,
                  tolerance, "tsallis_s", tsallis_s, "tsallis_r", tsallis_r)};
  for (auto& rep : out) {
    rep.trivial = cell >= kTwoPi * (1.0 - 1e-12);
    rep.bin_size = std::make_pair(r.max_dxi, r.max_dk);
  }
  return out;
}

std::array<RelationReport, 4> check_binned_relations(const MixedState& state, int n0,
                                                     double alpha, const BinPartition& part,
                                                     const PhaseGrid& grid, double tolerance) {
  conjugate(alpha);
  const PhaseDensity w = density(state, n0, grid);
  return check_binned_relations(bin_probs(w, part), number_dist(state), alpha, n0, tolerance);
}

TsallisMinimum tsallis_min_oracle(double alpha, double eta) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw DomainError("tsallis_min_oracle: need alpha > 1");
  const double eta2 = eta * eta;
  if (!(eta2 > 0.0 && eta2 < 1.0)) throw DomainError("tsallis_min_oracle: need 0 < eta^2 < 1");
  const double beta = alpha / (2.0 * alpha - 1.0);
  const double inv_eta2 = 1.0 / eta2;
  auto g = [&](double t, double tau) {
    return (t - 1.0) / (1.0 - alpha) + (tau - 1.0) / (1.0 - beta);
  };
  // g grows with tau, so for fixed t the best feasible tau is the lower edge
  // of the feasible set.
  auto tau_min = [&](double t) {
    return std::max(1.0, std::pow(inv_eta2, 1.0 - beta) * std::pow(t, beta / alpha));
  };
  auto reduced = [&](double t) { return g(t, tau_min(t)); };

  const int samples = 4001;
  const double log_lo = -12.0;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) {
    ts[i] = std::pow(10.0, log_lo * (1.0 - static_cast<double>(i) / (samples - 1)));
    const double v = reduced(ts[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = ts[std::max(best - 1, 0)];
  const double hi = ts[std::min(best + 1, samples - 1)];
  const double t = golden_min(reduced, lo, hi, 1e-15 * hi);

  TsallisMinimum out;
  out.t = t;
  out.tau = tau_min(t);
  out.value = g(out.t, out.tau);
  out.closed_form_t = std::pow(inv_eta2, 1.0 - alpha);
  out.closed_form = alpha_log(inv_eta2, EntropyOrder(alpha));
  return out;
}

MinimizeResult minimize_entropy_sum(double alpha, int n0, int truncation, std::uint64_t seed,
                                    const MinimizeOptions& options) {
  if (truncation < 0 || truncation > 30)
    throw DomainError("minimize_entropy_sum: truncation must lie in [0, 30]");
  if (n0 < 0) throw DomainError("minimize_entropy_sum: n0 must be non-negative");
  const ConjugatePair pair = conjugate(alpha);
  PhaseGrid search_grid = default_grid(truncation, n0, options.search_points);
  if (pair.alpha < 1.0) {
    // (sum_n |c_n| b_n)^2 <= sum_n b_n^2 for unit c, which is (N + 1) times the
    // envelope of the uniform Fock mixture.
    std::vector<MixtureComponent> fock;
    for (int n = 0; n <= truncation; ++n) fock.push_back({1.0 / (truncation + 1), fock_state(n, truncation)});
    const TailEnvelope worst(MixedState(std::move(fock)), n0);
    const double extent = worst.suggested_extent(
        pair.alpha, kTailThreshold * std::pow(truncation + 1.0, -pair.alpha));
    search_grid = PhaseGrid::symmetric(std::max(extent, search_grid.xi_max), options.search_points);
  }
  const std::size_t dim = static_cast<std::size_t>(truncation) + 1;

  int evaluations = 0;
  auto objective = [&](const FockVector& f) {
    ++evaluations;
    const PhaseDensity w = density(f, n0, search_grid);
    return renyi_continuous(w, EntropyOrder(pair.alpha)) +
           renyi_discrete(number_dist(f), EntropyOrder(pair.beta));
  };
  auto build = [&](const std::vector<double>& amp, const std::vector<double>& phase) {
    std::vector<cplx> c(dim);
    for (std::size_t n = 0; n < dim; ++n) c[n] = std::polar(amp[n], phase[n]);
    return FockVector::normalized(std::move(c));
  };

  struct Candidate {
    std::vector<double> amp, phase;
  };
  std::vector<Candidate> starts;
  {
    int best_n = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= truncation; ++n) {
      const double v = objective(fock_state(n, truncation));
      if (v < best_val) {
        best_val = v;
        best_n = n;
      }
    }
    Candidate c{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
    c.amp[best_n] = 1.0;
    starts.push_back(std::move(c));
  }
  for (int s = 0; s < options.starts; ++s) {
    const FockVector f = random_state(seed + static_cast<std::uint64_t>(s), truncation);
    Candidate c;
    for (const cplx& z : f.coeffs()) {
      c.amp.push_back(std::abs(z));
      c.phase.push_back(std::arg(z));
    }
    starts.push_back(std::move(c));
  }

  std::vector<double> best_amp, best_phase;
  double best_value = std::numeric_limits<double>::infinity();
  bool all_converged = true;
  for (Candidate& start : starts) {
    std::vector<double> amp = start.amp, phase = start.phase;
    double value = objective(build(amp, phase));
    double step = options.initial_step;
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t coord = 0; coord < 2 * dim; ++coord) {
        std::vector<double>& target = coord < dim ? amp : phase;
        const std::size_t idx = coord % dim;
        const double scale = coord < dim ? 1.0 : 2.0;
        for (double dir : {1.0, -1.0}) {
          const double saved = target[idx];
          target[idx] = saved + dir * scale * step;
          if (coord < dim) target[idx] = std::max(0.0, target[idx]);
          const bool degenerate =
              std::all_of(amp.begin(), amp.end(), [](double a) { return a == 0.0; });
          if (!degenerate && target[idx] != saved) {
            const double v = objective(build(amp, phase));
            if (v < value - 1e-12) {
              value = v;
              improved = true;
              break;
            }
          }
          target[idx] = saved;
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < options.min_step) {
          converged = true;
          break;
        }
      }
    }
    all_converged = all_converged && converged;
    if (value < best_value) {
      best_value = value;
      best_amp = amp;
      best_phase = phase;
    }
  }

  FockVector best = build(best_amp, best_phase);
  PhaseGrid report_grid = default_grid(best.support(), n0, options.report_points);
  if (pair.low() < 1.0) {
    const double extent = TailEnvelope(best, n0).suggested_extent(pair.low(), kTailThreshold);
    report_grid = PhaseGrid::symmetric(std::max(extent, report_grid.xi_max), options.report_points);
  }
  auto reports = check_renyi_relation(best, n0, alpha, report_grid, options.tolerance);
  return {std::move(best), reports[0].lhs, reports, all_converged, evaluations};
}

}  // namespace nxent
