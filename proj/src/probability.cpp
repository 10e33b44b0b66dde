#include "nxent/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nxent/error.hpp"

namespace nxent {
namespace {

// Integral over [a, b] of each node's hat function on a uniform grid
// (origin x0, spacing h, n nodes); nonzero entries only.
struct AxisWeights {
  std::size_t first = 0;
  std::vector<double> w;
};

AxisWeights hat_integrals(double x0, double h, std::size_t n, double a, double b) {
  // Integral of the hat centred at node i over [a, b] in units of h:
  // the hat is 1 - |t| on t in [-1, 1], t = (x - x_i) / h.
  auto ramp = [](double t) {  // integral of the hat from -1 to t
    if (t <= -1.0) return 0.0;
    if (t <= 0.0) return 0.5 * (t + 1.0) * (t + 1.0);
    if (t <= 1.0) return 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
    return 1.0;
  };
  const double ta = (a - x0) / h, tb = (b - x0) / h;
  const long lo = std::max(0L, static_cast<long>(std::floor(ta)) - 1);
  const long hi = std::min(static_cast<long>(n) - 1, static_cast<long>(std::ceil(tb)) + 1);
  AxisWeights out;
  out.first = static_cast<std::size_t>(lo);
  for (long i = lo; i <= hi; ++i) {
    double v = h * (ramp(tb - i) - ramp(ta - i));
    // The end nodes carry half hats; the outer half lies off the grid.
    if (i == 0) v = h * (ramp(tb - i) - ramp(std::max(ta - i, 0.0)));
    if (i == static_cast<long>(n) - 1) v = h * (ramp(std::min(tb - i, 0.0)) - ramp(ta - i));
    out.w.push_back(std::max(v, 0.0));
  }
  return out;
}

void check_edges(const std::vector<double>& edges, const char* axis) {
  if (edges.size() < 2) throw DomainError(std::string("partition: need >= 2 ") + axis + " edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw DomainError("partition: non-finite edge");
    if (i > 0 && !(edges[i] > edges[i - 1]))
      throw DomainError(std::string("partition: ") + axis + " edges must increase strictly");
  }
}

double max_width(const std::vector<double>& edges) {
  double m = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i) m = std::max(m, edges[i] - edges[i - 1]);
  return m;
}

std::vector<double> centred_edges(double step, double extent) {
  if (!(step > 0.0) || !(extent > 0.0)) throw DomainError("partition: need dxi, dk, extent > 0");
  const long m = static_cast<long>(std::floor(extent / step + 1e-9));
  if (m < 1) throw DomainError("partition: bin size exceeds extent");
  std::vector<double> edges;
  for (long i = -m; i <= m; ++i) edges.push_back(static_cast<double>(i) * step);
  return edges;
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("DiscreteDist: empty");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("DiscreteDist: entry outside [0, 1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "DiscreteDist: probabilities sum to " << total;
    throw DomainError(msg.str());
  }
}

BinPartition BinPartition::uniform(double dxi, double dk, double extent) {
  return {centred_edges(dxi, extent), centred_edges(dk, extent)};
}

void BinPartition::validate() const {
  check_edges(xi_edges, "xi");
  check_edges(k_edges, "k");
}

double BinPartition::max_dxi() const { return max_width(xi_edges); }
double BinPartition::max_dk() const { return max_width(k_edges); }

DiscreteDist number_dist(const MixedState& state) {
  std::vector<double> s(static_cast<std::size_t>(state.truncation()) + 1, 0.0);
  for (const auto& comp : state.components()) {
    const auto c = comp.state.coeffs();
    for (std::size_t n = 0; n < c.size(); ++n) s[n] += comp.weight * std::norm(c[n]);
  }
  // Rounding only; the components are unit vectors and the weights sum to 1.
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (double& p : s) p = std::min(1.0, p / total);
  return DiscreteDist(std::move(s));
}

BinnedDist bin_probs(const PhaseDensity& w, const BinPartition& part) {
  part.validate();
  const PhaseGrid& g = w.grid;
  const double tol = 1e-9 * std::max({1.0, std::abs(g.xi_min), std::abs(g.xi_max)});
  if (part.xi_edges.front() < g.xi_min - tol || part.xi_edges.back() > g.xi_max + tol ||
      part.k_edges.front() < g.k_min - tol || part.k_edges.back() > g.k_max + tol)
    throw DomainError("bin_probs: partition extends beyond the density grid");

  const std::size_t lx = part.xi_edges.size() - 1, lk = part.k_edges.size() - 1;
  std::vector<AxisWeights> wx(lx), wk(lk);
  for (std::size_t l = 0; l < lx; ++l)
    wx[l] = hat_integrals(g.xi_min, g.dxi(), g.n_xi, part.xi_edges[l], part.xi_edges[l + 1]);
  for (std::size_t m = 0; m < lk; ++m)
    wk[m] = hat_integrals(g.k_min, g.dk(), g.n_k, part.k_edges[m], part.k_edges[m + 1]);

  // Contract along k first: rows[i * lk + m] = sum_j wk[m]_j w(i, j).
  std::vector<double> rows(g.n_xi * lk, 0.0);
  for (std::size_t i = 0; i < g.n_xi; ++i) {
    const double* wrow = w.w.data() + i * g.n_k;
    for (std::size_t m = 0; m < lk; ++m) {
      double s = 0.0;
      for (std::size_t t = 0; t < wk[m].w.size(); ++t) s += wk[m].w[t] * wrow[wk[m].first + t];
      rows[i * lk + m] = s;
    }
  }
  std::vector<double> r(lx * lk, 0.0);
  for (std::size_t l = 0; l < lx; ++l) {
    for (std::size_t m = 0; m < lk; ++m) {
      double s = 0.0;
      for (std::size_t t = 0; t < wx[l].w.size(); ++t) s += wx[l].w[t] * rows[(wx[l].first + t) * lk + m];
      r[l * lk + m] = s;
    }
  }

  const double total = w.integral();
  const double inside = std::accumulate(r.begin(), r.end(), 0.0);
  const double outside = (total - inside) / total;
  BinnedDist out{DiscreteDist({1.0}), part.max_dxi(), part.max_dk(), false, 0.0};
  for (double& p : r) p /= total;
  if (outside > 1e-6) {
    out.has_outer_bin = true;
    out.outer_mass = outside;
    r.push_back(outside);
  }
  const double norm = std::accumulate(r.begin(), r.end(), 0.0);
  for (double& p : r) p = std::clamp(p / norm, 0.0, 1.0);
  out.probs = DiscreteDist(std::move(r));
  return out;
}

}  // namespace nxent
