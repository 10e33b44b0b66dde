// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "nxent/entropy.hpp"
#include "nxent/moments.hpp"
#include "nxent/probability.hpp"
#include "nxent/relations.hpp"
#include "nxent/transform.hpp"
#include "oracles.hpp"

using namespace nxent;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const double kPi = std::numbers::pi;
const double kEta = 1.0 / std::sqrt(2.0 * kPi);
const std::vector<double> kOrders{0.6, 0.8, 1.0, 1.5, 2.0, 4.0};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Running tally of the worst margin seen and how many checks ran.
struct Tally {
  double worst = INFINITY;
  std::string where;
  long count = 0;
  long failures = 0;
  void add(const RelationReport& r, const std::string& label) {
    ++count;
    if (!r.pass) ++failures;
    if (r.margin < worst) {
      worst = r.margin;
      std::ostringstream s;
      s << label << ' ' << r.relation << '[' << r.assignment << "] alpha=" << r.alpha;
      where = s.str();
    }
  }
  std::string summary() const {
    std::ostringstream s;
    s.precision(6);
    s << count << " checks, " << failures << " failed, worst margin " << worst << " (" << where << ")";
    return s.str();
  }
};

struct Sample {
  std::string label;
  MixedState state;
  int n0;
  PhaseDensity w;
  DiscreteDist s;
};

// Random pure states and mixtures at N = 15, each on a 512-point grid wide
// enough for every order in the sweep.
std::vector<Sample> build_sweep() {
  gen::Gen g(20240611);
  std::vector<std::pair<std::string, MixedState>> states;
  for (int i = 0; i < 50; ++i) states.emplace_back("pure#" + std::to_string(i), MixedState(g.state(15)));
  for (int i = 0; i < 10; ++i) states.emplace_back("mix#" + std::to_string(i), g.mixture(15, 2 + i % 3));

  double lowest = 1.0;
  for (double a : kOrders) lowest = std::min(lowest, conjugate(a).low());

  std::vector<Sample> out;
  for (int n0 : {0, 1}) {
    for (const auto& [label, state] : states) {
      const TailEnvelope env(state, n0);
      const double extent =
          std::max(required_extent(state.support(), n0), env.suggested_extent(lowest, kTailThreshold));
      PhaseDensity w = density(state, n0, PhaseGrid::symmetric(extent, 512));
      out.push_back({label + " n0=" + std::to_string(n0), state, n0, std::move(w), number_dist(state)});
    }
  }
  return out;
}

const std::vector<Sample>& sweep() {
  static const std::vector<Sample> samples = build_sweep();
  return samples;
}

MixedState vacuum() { return MixedState(fock_state(0, 0)); }

Outcome criterion1() {
  const auto t0 = Clock::now();
  const EtaEstimate e = eta_estimate(0, 30, default_grid(30, 0));
  const double elapsed = seconds_since(t0);
  // A smooth maximum is located to about sqrt(machine epsilon).
  const bool at_origin = e.n == 0 && std::abs(e.xi) < 1e-6 && std::abs(e.k) < 1e-6;
  std::ostringstream s;
  s.precision(12);
  s << "eta=" << e.eta << " at (n,xi,k)=(" << e.n << ',' << e.xi << ',' << e.k << ") in " << elapsed << " s";
  return {std::abs(e.eta - kEta) <= 1e-6 && at_origin && elapsed < 60.0, s.str()};
}

Outcome criterion2() {
  gen::Gen g(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double xi = g.uniform(-10, 10), k = g.uniform(-10, 10);
    const double expect = kEta * std::exp(-(xi * xi + k * k) / 4.0);
    worst = std::max(worst, std::abs(std::abs(transform_basis(0, 0, xi, k)) - expect));
  }
  std::ostringstream s;
  s << "max abs error " << worst << " over 1000 points";
  return {worst <= 1e-9, s.str()};
}

cplx inner(const TransformField& a, const TransformField& b) {
  const auto wx = trapezoid_weights(a.grid.n_xi, a.grid.dxi());
  const auto wk = trapezoid_weights(a.grid.n_k, a.grid.dk());
  cplx total = 0.0;
  for (std::size_t i = 0; i < a.grid.n_xi; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < a.grid.n_k; ++j) row += wk[j] * std::conj(a.at(i, j)) * b.at(i, j);
    total += wx[i] * row;
  }
  return total;
}

Outcome criterion3() {
  double worst_ortho = 0.0;
  for (int n0 : {0, 1, 2}) {
    const PhaseGrid grid = default_grid(12, n0);
    std::vector<TransformField> fields;
    for (int n = 0; n <= 12; ++n) fields.push_back(transform_state(fock_state(n, 12), n0, grid));
    for (int m = 0; m <= 12; ++m)
      for (int n = m; n <= 12; ++n)
        worst_ortho = std::max(worst_ortho, std::abs(inner(fields[m], fields[n]) - (m == n ? 1.0 : 0.0)));
  }
  gen::Gen g(3);
  double worst_norm = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int N = g.integer(0, 30), n0 = g.integer(0, 2);
    const MixedState state(g.state(N));
    const PhaseDensity w = density(state, n0, default_grid(state.support(), n0));
    worst_norm = std::max(worst_norm, std::abs(w.integral() - 1.0));
  }
  std::ostringstream s;
  s << "orthonormality error " << worst_ortho << ", Parseval error " << worst_norm;
  return {worst_ortho <= 1e-6 && worst_norm <= 2e-6, s.str()};
}

Outcome vacuum_relation(bool renyi, double expect_margin, double expect_lhs, Tally& tally) {
  const MixedState vac = vacuum();
  const PhaseDensity w = density(vac, 0, default_grid(0, 0));
  const auto reps = renyi ? check_renyi_relation(w, number_dist(vac), 2.0) : check_tsallis_relation(w, number_dist(vac), 2.0);
  const RelationReport& r = reps[0];
  std::ostringstream s;
  s.precision(10);
  s << tally.summary() << "; vacuum alpha=2 lhs=" << r.lhs << " margin=" << r.margin;
  const bool ok = tally.failures == 0 && tally.count > 0 && std::abs(r.margin - expect_margin) <= 1e-3 &&
                  std::abs(r.lhs - expect_lhs) <= 1e-3;
  return {ok, s.str()};
}

Outcome criterion4() {
  Tally tally;
  for (const Sample& x : sweep())
    for (double a : kOrders)
      for (const auto& r : check_renyi_relation(x.w, x.s, a)) tally.add(r, x.label);
  const double ln2pi = std::log(2.0 * kPi);
  // Vacuum: R_2(w) = ln 4 pi, R_{2/3}(s) = 0.
  return vacuum_relation(true, std::log(2.0), ln2pi + std::log(2.0), tally);
}

Outcome criterion5() {
  Tally tally;
  for (const Sample& x : sweep())
    for (double a : kOrders)
      for (const auto& r : check_tsallis_relation(x.w, x.s, a)) tally.add(r, x.label);
  return vacuum_relation(false, 1.0 / (4.0 * kPi), 1.0 - 1.0 / (4.0 * kPi), tally);
}

Outcome criterion6() {
  Tally tally;
  for (const Sample& x : sweep())
    for (double a : kOrders) {
      if (a == 1.0) continue;
      for (const auto& r : check_riesz(x.w, x.s, conjugate(a), kEta)) tally.add(r, x.label);
    }
  return {tally.failures == 0 && tally.count > 0, tally.summary()};
}

Outcome criterion7() {
  Tally tally;
  long bound_errors = 0, trivial_errors = 0;
  for (const Sample& x : sweep()) {
    const double extent = std::min(x.w.grid.xi_max, x.w.grid.k_max);
    for (double d : {0.25, 0.5, 1.0}) {
      const BinnedDist r = bin_probs(x.w, BinPartition::uniform(d, d, extent));
      for (double a : kOrders) {
        for (const auto& rep : check_binned_relations(r, x.s, a, x.n0)) {
          tally.add(rep, x.label + " delta=" + std::to_string(d));
          if (rep.trivial) ++trivial_errors;
          const double ratio = 2.0 * kPi / (d * d);
          const ConjugatePair p = conjugate(a);
          const double mu = p.mu();
          const double expect = rep.relation == "renyi_binned"
                                    ? std::log(ratio)
                                    : (mu == 1.0 ? std::log(ratio) : (std::pow(ratio, 1.0 - mu) - 1.0) / (1.0 - mu));
          if (std::abs(rep.bound - expect) > 1e-12 * std::max(1.0, std::abs(expect))) ++bound_errors;
        }
      }
    }
  }
  // Cells of area >= 2 pi carry no information and must be flagged.
  long flagged = 0, coarse = 0;
  for (std::size_t i = 0; i < sweep().size(); i += 10) {
    const Sample& x = sweep()[i];
    const double d = std::sqrt(2.0 * kPi);
    const BinnedDist r = bin_probs(x.w, BinPartition::uniform(d, d, std::min(x.w.grid.xi_max, x.w.grid.k_max)));
    for (const auto& rep : check_binned_relations(r, x.s, 2.0, x.n0)) {
      ++coarse;
      if (rep.trivial) ++flagged;
    }
  }
  std::ostringstream s;
  s << tally.summary() << "; bound mismatches " << bound_errors << "; trivial flags " << flagged << '/'
    << coarse << " at area 2pi, " << trivial_errors << " spurious";
  return {tally.failures == 0 && bound_errors == 0 && trivial_errors == 0 && flagged == coarse && coarse > 0,
          s.str()};
}

Outcome criterion8() {
  gen::Gen g(8);
  long checks = 0, failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const MixedState state = i % 4 == 3 ? g.mixture(g.integer(1, 12), 2) : MixedState(g.state(g.integer(1, 12)));
    for (int n0 : {0, 1, 2}) {
      const TailEnvelope env(state, n0);
      const double extent =
          std::max(required_extent(state.support(), n0), env.suggested_extent(1.0, 1e-8, 2));
      const PhaseDensity w = density(state, n0, PhaseGrid::symmetric(extent, 512));
      for (const auto& r : check_tracing(state, w)) {
        ++checks;
        if (!r.pass) ++failures;
        worst = std::max(worst, std::abs(r.lhs - r.bound));
      }
      // Independent restatement of the offsets from raw moments.
      const MomentSet f = fock_moments(state);
      const DensityMoments d = density_moments(w);
      const double offsets[] = {d.var_Q - f.var_q - (n0 + 0.5), d.var_P - f.var_p - (n0 + 0.5),
                                d.var_A - f.varL_a - n0, d.var_A - f.varR_a - (n0 + 1.0),
                                d.mean_Q - f.mean_q, d.mean_P - f.mean_p, std::abs(d.mean_A - f.mean_a)};
      for (double o : offsets) {
        ++checks;
        if (!(std::abs(o) <= 1e-4)) ++failures;
        worst = std::max(worst, std::abs(o));
      }
    }
  }
  std::ostringstream s;
  s << checks << " checks, " << failures << " failed, worst deviation " << worst;
  return {failures == 0, s.str()};
}

Outcome criterion9() {
  double worst = 0.0;
  for (double a : {1.1, 1.5, 2.0, 3.0}) {
    const TsallisMinimum m = tsallis_min_oracle(a, kEta);
    const double ln_a = (std::pow(2.0 * kPi, 1.0 - a) - 1.0) / (1.0 - a);
    worst = std::max({worst, std::abs(m.value - ln_a), std::abs(m.closed_form - ln_a)});
  }
  std::ostringstream s;
  s << "max deviation from ln_alpha 2pi " << worst;
  return {worst <= 1e-8, s.str()};
}

Outcome criterion10() {
  gen::Gen g(10);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DiscreteDist p(g.distribution(static_cast<std::size_t>(g.integer(2, 40))));
    const double h1 = shannon_discrete(p);
    for (double a : {1.0 - 1e-5, 1.0 + 1e-5}) {
      worst = std::max(worst, std::abs(renyi_discrete(p, EntropyOrder(a)) - h1));
      worst = std::max(worst, std::abs(tsallis_discrete(p, EntropyOrder(a)) - h1));
    }
  }
  const MixedState vac = vacuum();
  const PhaseGrid grid = PhaseGrid::symmetric(
      std::max(required_extent(0, 0), TailEnvelope(vac, 0).suggested_extent(1.0 - 1e-5, kTailThreshold)), 512);
  const PhaseDensity w = density(vac, 0, grid);
  const double h = shannon_continuous(w);
  for (double a : {1.0 - 1e-5, 1.0 + 1e-5}) {
    worst = std::max(worst, std::abs(renyi_continuous(w, EntropyOrder(a)) - h));
    worst = std::max(worst, std::abs(tsallis_continuous(w, EntropyOrder(a)) - h));
  }
  const double vac_err = std::abs(h - (std::log(2.0 * kPi) + 1.0));
  std::ostringstream s;
  s << "max continuity gap " << worst << ", vacuum Shannon error " << vac_err;
  return {worst <= 1e-4 && vac_err <= 1e-4, s.str()};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion11(Clock::time_point start) {
  const fs::path configs = fs::path(NXENT_SOURCE_DIR) / "configs";
  const fs::path out = fs::temp_directory_path() / ("nxent_acceptance_" + std::to_string(::getpid()));
  const std::vector<std::pair<std::string, std::string>> runs{{"check", "vacuum_check.json"},
                                                              {"scan-alpha", "vacuum_scan.json"},
                                                              {"bins", "vacuum_bins.json"},
                                                              {"eta", "eta.json"},
                                                              {"minimize", "minimize.json"}};
  const auto t0 = Clock::now();
  std::ostringstream s;
  bool ok = true;
  for (const auto& [cmd, cfg] : runs) {
    const std::string line = std::string(NXENT_CLI_PATH) + ' ' + cmd + " --config " + (configs / cfg).string() +
                             " --out " + (out / cmd).string() + " > /dev/null 2>&1";
    const int code = shell(line);
    if (code != 0) {
      ok = false;
      s << cmd << " exited " << code << "; ";
    }
  }
  fs::remove_all(out);
  const double smoke = seconds_since(t0), total = seconds_since(start);
  s.precision(4);
  s << "CLI smoke " << smoke << " s, acceptance total " << total << " s (budget 900 s)";
  return {ok && total < 900.0, s.str()};
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"eta for n0=0 equals (2pi)^(-1/2) at the origin", criterion1},
      {"vacuum kernel matches the Gaussian", criterion2},
      {"orthonormality and Parseval", criterion3},
      {"Renyi relation sweep", criterion4},
      {"Tsallis relation sweep", criterion5},
      {"Riesz norm inequalities", criterion6},
      {"binned relations", criterion7},
      {"tracing identities", criterion8},
      {"Tsallis bound minimization", criterion9},
      {"Shannon continuity", criterion10},
      {"CLI smoke runs and time budget", [start] { return criterion11(start); }}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
