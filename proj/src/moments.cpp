#include "nxent/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nxent/error.hpp"

namespace nxent {
namespace {

constexpr double kMomentTailThreshold = 1e-8;

}  // namespace

MomentSet fock_moments(const MixedState& state) {
  MomentSet m;
  double q2 = 0.0, p2 = 0.0, n1 = 0.0, n2 = 0.0;
  cplx a1;
  for (const MixtureComponent& comp : state.components()) {
    const auto c = comp.state.coeffs();
    const std::size_t dim = c.size();
    if (std::norm(c[dim - 1]) > 1e-8) m.truncation_warning = true;
    // q|c> and p|c> live in the extended space spanned by |0>..|N+1>.
    std::vector<cplx> qc(dim + 1), pc(dim + 1);
    const cplx i_unit(0.0, 1.0);
    for (std::size_t n = 0; n < dim; ++n) {
      const double up = std::sqrt((n + 1) / 2.0);
      const double down = std::sqrt(n / 2.0);
      qc[n + 1] += up * c[n];
      pc[n + 1] += i_unit * up * c[n];
      if (n > 0) {
        qc[n - 1] += down * c[n];
        pc[n - 1] -= i_unit * down * c[n];
      }
    }
    cplx a;
    double sq = 0.0, sp = 0.0, sn = 0.0, sn2 = 0.0;
    for (std::size_t n = 1; n < dim; ++n) a += std::conj(c[n - 1]) * std::sqrt(double(n)) * c[n];
    for (std::size_t n = 0; n <= dim; ++n) {
      sq += std::norm(qc[n]);
      sp += std::norm(pc[n]);
    }
    for (std::size_t n = 0; n < dim; ++n) {
      const double s = std::norm(c[n]);
      sn += n * s;
      sn2 += double(n) * n * s;
    }
    a1 += comp.weight * a;
    q2 += comp.weight * sq;
    p2 += comp.weight * sp;
    n1 += comp.weight * sn;
    n2 += comp.weight * sn2;
  }
  m.mean_a = a1;
  m.mean_q = std::sqrt(2.0) * a1.real();
  m.mean_p = std::sqrt(2.0) * a1.imag();
  m.var_q = std::max(0.0, q2 - m.mean_q * m.mean_q);
  m.var_p = std::max(0.0, p2 - m.mean_p * m.mean_p);
  m.mean_n = n1;
  m.var_n = std::max(0.0, n2 - n1 * n1);
  m.varR_a = n1 - std::norm(a1);
  m.varL_a = n1 + 1.0 - std::norm(a1);
  return m;
}

DensityMoments density_moments(const PhaseDensity& w) {
  const double tail = w.envelope.tail_integral(1.0, w.grid.inscribed_radius(), 2);
  if (tail >= kMomentTailThreshold) {
    const double extent = w.envelope.suggested_extent(1.0, kMomentTailThreshold, 2);
    std::ostringstream msg;
    msg.precision(6);
    msg << "second moments: up to " << tail
        << " of r^2 w lies outside the grid; use a half-width of at least " << extent;
    throw TailError(msg.str(), extent);
  }
  const PhaseGrid& g = w.grid;
  const auto wx = trapezoid_weights(g.n_xi, g.dxi());
  const auto wk = trapezoid_weights(g.n_k, g.dk());
  double m0 = 0.0, mq = 0.0, mp = 0.0, mqq = 0.0, mpp = 0.0;
  for (std::size_t i = 0; i < g.n_xi; ++i) {
    const double xi = g.xi(i);
    double r0 = 0.0, rp = 0.0, rpp = 0.0;
    for (std::size_t j = 0; j < g.n_k; ++j) {
      const double k = g.k(j);
      const double v = wk[j] * w.at(i, j);
      r0 += v;
      rp += v * k;
      rpp += v * k * k;
    }
    m0 += wx[i] * r0;
    mq += wx[i] * xi * r0;
    mqq += wx[i] * xi * xi * r0;
    mp += wx[i] * rp;
    mpp += wx[i] * rpp;
  }
  DensityMoments d;
  d.mean_Q = mq / m0;
  d.mean_P = mp / m0;
  d.var_Q = mqq / m0 - d.mean_Q * d.mean_Q;
  d.var_P = mpp / m0 - d.mean_P * d.mean_P;
  d.mean_A = cplx(d.mean_Q, d.mean_P) / std::numbers::sqrt2;
  d.var_A = 0.5 * (d.var_Q + d.var_P);
  return d;
}

std::vector<RelationReport> check_tracing(const MixedState& state, int n0, const PhaseGrid& grid,
                                          double tolerance) {
  if (n0 < 0) throw DomainError("check_tracing: n0 must be non-negative");
  return check_tracing(state, density(state, n0, grid), tolerance);
}

std::vector<RelationReport> check_tracing(const MixedState& state, const PhaseDensity& w,
                                          double tolerance) {
  const int n0 = w.n0;
  const MomentSet f = fock_moments(state);
  const DensityMoments d = density_moments(w);
  const double offset = n0 + 0.5;

  std::vector<RelationReport> out;
  auto add = [&](const char* name, const char* lhs_name, double lhs, const char* rhs_name,
                 double rhs) {
    RelationReport r;
    r.relation = name;
    r.n0 = n0;
    r.lhs_terms = {{lhs_name, lhs}, {rhs_name, rhs}};
    r.lhs = lhs;
    r.bound = rhs;
    r.sense = Sense::Equal;
    r.tolerance = tolerance;
    settle(r);
    out.push_back(std::move(r));
  };
  add("tracing_mean_q", "mean_Q", d.mean_Q, "mean_q", f.mean_q);
  add("tracing_mean_p", "mean_P", d.mean_P, "mean_p", f.mean_p);
  add("tracing_mean_a_re", "mean_A_re", d.mean_A.real(), "mean_a_re", f.mean_a.real());
  add("tracing_mean_a_im", "mean_A_im", d.mean_A.imag(), "mean_a_im", f.mean_a.imag());
  add("tracing_var_q", "var_Q", d.var_Q, "var_q_plus_offset", f.var_q + offset);
  add("tracing_var_p", "var_P", d.var_P, "var_p_plus_offset", f.var_p + offset);
  add("tracing_var_a_left", "var_A", d.var_A, "varL_a_plus_n0", f.varL_a + n0);
  add("tracing_var_a_right", "var_A", d.var_A, "varR_a_plus_n0_plus_1", f.varR_a + n0 + 1.0);

  // Number statistics of the extended system: diagonal of rho in the Fock basis.
  const DiscreteDist s = number_dist(state);
  double worst = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    cplx rho_nn;
    for (const MixtureComponent& comp : state.components())
      if (n < comp.state.coeffs().size())
        rho_nn += comp.weight * comp.state[n] * std::conj(comp.state[n]);
    worst = std::max(worst, std::abs(rho_nn.real() - s[n]) + std::abs(rho_nn.imag()));
  }
  add("tracing_number_dist", "max_abs_diff", worst, "zero", 0.0);
  return out;
}

}  // namespace nxent
