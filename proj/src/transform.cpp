#include "nxent/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nxent/basis.hpp"
#include "nxent/error.hpp"
#include "nxent/kernels.hpp"
#include "nxent/parallel.hpp"

namespace nxent {
namespace {

constexpr double kMinHalfWindow = 9.0;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// Symmetric trapezoid nodes z_m = m h, |z| <= half_width, relative to x = xi / 2.
struct Window {
  double h = 0.0;
  std::vector<double> z;
  std::vector<double> weights;
};

// phi_n(x) phi_n0(xi - x) is below 1e-16 once |z| exceeds the mean of the two
// turning points by 5; never narrower than 9.
double half_width(int nmax, int n0) {
  const double turning = 0.5 * (std::sqrt(2.0 * nmax + 1.0) + std::sqrt(2.0 * n0 + 1.0));
  return std::max(kMinHalfWindow, turning + 5.0);
}

Window make_window(double h, int nmax, int n0) {
  Window win;
  win.h = h;
  const long half = static_cast<long>(std::floor(half_width(nmax, n0) / h + 1e-12));
  win.z.resize(static_cast<std::size_t>(2 * half + 1));
  for (long m = -half; m <= half; ++m) win.z[static_cast<std::size_t>(m + half)] = m * h;
  win.weights = trapezoid_weights(win.z.size(), h);
  return win;
}

// f(x_j) = sum_n c_n phi_n(x_j), falling back to the scaled recurrence when an
// abscissa leaves the fast kernel's range.
void expand(std::span<const double> xs, std::span<const double> c_re,
            std::span<const double> c_im, std::span<double> out_re, std::span<double> out_im) {
  const bool fast = std::all_of(xs.begin(), xs.end(), [](double x) {
    return std::abs(x) <= kernels::kFastHermiteRange;
  });
  if (fast) {
    kernels::active().hermite_expand(xs, c_re, c_im, out_re, out_im);
    return;
  }
  const int nmax = static_cast<int>(c_re.size()) - 1;
  const BasisTable table = basis_table(nmax, xs);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double re = 0.0, im = 0.0;
    for (int n = 0; n <= nmax; ++n) {
      re += c_re[n] * table(n, j);
      im += c_im[n] * table(n, j);
    }
    out_re[j] = re;
    out_im[j] = im;
  }
}

struct RowBuffers {
  std::vector<double> xs, ys, f_re, f_im, a_re, a_im, g_re, g_im, out_re, out_im;

  RowBuffers(std::size_t nodes, std::size_t nk)
      : xs(nodes), ys(nodes), f_re(nodes), f_im(nodes), a_re(nodes), a_im(nodes),
        g_re(nodes), g_im(nodes), out_re(nk), out_im(nk) {}
};

// Shared state for evaluating the unscaled quadrature sum on one xi row.
class RowTransformer {
 public:
  RowTransformer(std::span<const cplx> coeffs, int n0, const Window& window,
                 std::span<const double> ks)
      : window_(window), ks_(ks), ancilla_re_(n0 + 1, 0.0), ancilla_im_(n0 + 1, 0.0) {
    ancilla_re_[n0] = 1.0;
    c_re_.reserve(coeffs.size());
    c_im_.reserve(coeffs.size());
    for (const cplx& c : coeffs) {
      c_re_.push_back(c.real());
      c_im_.push_back(c.imag());
    }
  }

  RowBuffers buffers() const { return RowBuffers(window_.z.size(), ks_.size()); }

  // Leaves sum_m g_m exp(-i k z_m) for every k in buf.out_re / buf.out_im.
  void run(double xi, RowBuffers& buf) const {
    const std::size_t nodes = window_.z.size();
    for (std::size_t m = 0; m < nodes; ++m) {
      buf.xs[m] = 0.5 * xi + window_.z[m];
      buf.ys[m] = 0.5 * xi - window_.z[m];
    }
    expand(buf.xs, c_re_, c_im_, buf.f_re, buf.f_im);
    expand(buf.ys, ancilla_re_, ancilla_im_, buf.a_re, buf.a_im);
    for (std::size_t m = 0; m < nodes; ++m) {
      const double s = window_.weights[m] * buf.a_re[m];
      buf.g_re[m] = s * buf.f_re[m];
      buf.g_im[m] = s * buf.f_im[m];
    }
    kernels::active().osc_sum(buf.g_re, buf.g_im, window_.z.front(), window_.h, ks_,
                              buf.out_re, buf.out_im);
  }

 private:
  const Window& window_;
  std::span<const double> ks_;
  std::vector<double> c_re_, c_im_;
  std::vector<double> ancilla_re_, ancilla_im_;
};

std::vector<double> grid_ks(const PhaseGrid& grid) {
  std::vector<double> ks(grid.n_k);
  for (std::size_t j = 0; j < grid.n_k; ++j) ks[j] = grid.k(j);
  return ks;
}

double max_abs_k(const PhaseGrid& grid) { return std::max(std::abs(grid.k_min), std::abs(grid.k_max)); }

void require_coverage(const PhaseGrid& grid, int support, int n0, const char* who) {
  grid.validate();
  if (n0 < 0) throw DomainError(std::string(who) + ": n0 must be non-negative");
  const double need = required_extent(support, n0);
  if (!grid.covers(need)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << who << ": grid must cover |xi|, |k| <= " << need << " for support N = " << support
        << " and n0 = " << n0;
    throw GridError(msg.str(), need);
  }
}

std::span<const cplx> supported_coeffs(const FockVector& f) {
  return f.coeffs().first(static_cast<std::size_t>(f.support()) + 1);
}

template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
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

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Bound on |<n|D(beta)|m>| for |beta|^2 = u from the normal-ordered
// expansion of the displacement operator.
double displaced_overlap_bound(int n, int m, double u) {
  if (u <= 0.0) return n == m ? 1.0 : 0.0;
  const double log_r = 0.5 * std::log(u);
  const double base = 0.5 * (log_factorial(n) + log_factorial(m)) - 0.5 * u;
  double sum = 0.0;
  for (int j = 0; j <= std::min(n, m); ++j) {
    const double lt = base + (n + m - 2 * j) * log_r - log_factorial(j) - log_factorial(n - j) -
                      log_factorial(m - j);
    sum += std::exp(lt);
  }
  return std::min(1.0, sum);
}

}  // namespace

double required_extent(int support, int n0) {
  return 2.0 * std::sqrt(2.0 * support + 2.0 * n0 + 2.0) + 6.0;
}

PhaseGrid default_grid(int support, int n0, std::size_t points) {
  return PhaseGrid::symmetric(required_extent(support, n0), points);
}

double quadrature_step(double abs_k) {
  return std::min(0.02, std::numbers::pi / (16.0 * (abs_k + 1.0)));
}

cplx transform_basis(int n, int n0, double xi, double k) {
  if (n < 0 || n0 < 0) throw DomainError("transform_basis: indices must be non-negative");
  if (!std::isfinite(xi) || !std::isfinite(k))
    throw DomainError("transform_basis: xi and k must be finite");
  const Window window = make_window(quadrature_step(std::abs(k)), n, n0);
  std::vector<cplx> coeffs(n + 1, cplx{});
  coeffs[n] = 1.0;
  const double ks[1] = {k};
  RowTransformer row(coeffs, n0, window, ks);
  RowBuffers buf = row.buffers();
  row.run(xi, buf);
  return kInvSqrt2Pi * cplx(buf.out_re[0], buf.out_im[0]);
}

TransformField transform_state(const FockVector& f, int n0, const PhaseGrid& grid) {
  require_coverage(grid, f.support(), n0, "transform_state");
  const Window window = make_window(quadrature_step(max_abs_k(grid)), f.support(), n0);
  const std::vector<double> ks = grid_ks(grid);
  const RowTransformer row(supported_coeffs(f), n0, window, ks);

  TransformField field{grid, n0, std::vector<cplx>(grid.size())};
  parallel_for(grid.n_xi, [&](std::size_t begin, std::size_t end) {
    RowBuffers buf = row.buffers();
    for (std::size_t i = begin; i < end; ++i) {
      row.run(grid.xi(i), buf);
      cplx* out = field.amps.data() + i * grid.n_k;
      for (std::size_t j = 0; j < grid.n_k; ++j)
        out[j] = kInvSqrt2Pi * cplx(buf.out_re[j], buf.out_im[j]);
    }
  });
  return field;
}

double PhaseDensity::max_value() const { return *std::max_element(w.begin(), w.end()); }

PhaseDensity density(const MixedState& state, int n0, const PhaseGrid& grid) {
  require_coverage(grid, state.support(), n0, "density");
  const Window window = make_window(quadrature_step(max_abs_k(grid)), state.support(), n0);
  const std::vector<double> ks = grid_ks(grid);

  PhaseDensity out{grid, n0, std::vector<double>(grid.size(), 0.0), TailEnvelope(state, n0)};
  for (const auto& component : state.components()) {
    const RowTransformer row(supported_coeffs(component.state), n0, window, ks);
    const double scale = component.weight / (2.0 * std::numbers::pi);
    parallel_for(grid.n_xi, [&](std::size_t begin, std::size_t end) {
      RowBuffers buf = row.buffers();
      for (std::size_t i = begin; i < end; ++i) {
        row.run(grid.xi(i), buf);
        std::span<double> dest(out.w.data() + i * grid.n_k, grid.n_k);
        kernels::active().accumulate_abs2(scale, buf.out_re, buf.out_im, dest);
      }
    });
  }
  return out;
}

EtaEstimate eta_estimate(int n0, int nmax, const PhaseGrid& grid) {
  if (nmax < 0) throw DomainError("eta_estimate: nmax must be non-negative");
  require_coverage(grid, nmax, n0, "eta_estimate");
  const Window window = make_window(quadrature_step(max_abs_k(grid)), nmax, n0);
  const std::vector<double> ks = grid_ks(grid);
  std::vector<RowTransformer> rows;
  rows.reserve(nmax + 1);
  std::vector<std::vector<cplx>> unit(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    unit[n].assign(n + 1, cplx{});
    unit[n][n] = 1.0;
    rows.emplace_back(unit[n], n0, window, ks);
  }

  struct Best {
    double value = -1.0;
    int n = 0;
    std::size_t i = 0, j = 0;
  };
  std::vector<Best> per_row(grid.n_xi);
  parallel_for(grid.n_xi, [&](std::size_t begin, std::size_t end) {
    RowBuffers buf = rows.front().buffers();
    for (std::size_t i = begin; i < end; ++i) {
      Best best;
      for (int n = 0; n <= nmax; ++n) {
        rows[n].run(grid.xi(i), buf);
        for (std::size_t j = 0; j < grid.n_k; ++j) {
          const double v = kInvSqrt2Pi * std::hypot(buf.out_re[j], buf.out_im[j]);
          if (v > best.value) best = {v, n, i, j};
        }
      }
      per_row[i] = best;
    }
  });
  Best best;
  for (const Best& b : per_row) {
    if (b.value > best.value) best = b;
  }

  // Alternate golden-section searches in xi and k around the best node.
  const int n = best.n;
  auto modulus = [&](double xi, double k) { return std::abs(transform_basis(n, n0, xi, k)); };
  double xi = grid.xi(best.i), k = grid.k(best.j);
  double value = modulus(xi, k);
  double span_xi = grid.dxi(), span_k = grid.dk();
  for (int round = 0; round < 40; ++round) {
    const double xi_new = golden_max([&](double t) { return modulus(t, k); }, xi - span_xi,
                                     xi + span_xi, 1e-9);
    const double k_new = golden_max([&](double t) { return modulus(xi_new, t); }, k - span_k,
                                    k + span_k, 1e-9);
    const double v = modulus(xi_new, k_new);
    const double moved = std::max(std::abs(xi_new - xi), std::abs(k_new - k));
    if (v >= value) {
      xi = xi_new;
      k = k_new;
      value = v;
    }
    if (moved < 1e-8) break;
    span_xi = std::max(4.0 * moved, 1e-6);
    span_k = span_xi;
  }
  return {std::max(value, best.value), n, xi, k, kInvSqrt2Pi};
}

TailEnvelope::TailEnvelope(const MixedState& state, int n0) : n0_(n0), support_(state.support()) {
  for (const auto& c : state.components()) {
    Component comp{c.weight, {}};
    for (const cplx& z : c.state.coeffs()) comp.abs_coeffs.push_back(std::abs(z));
    components_.push_back(std::move(comp));
  }
}

double TailEnvelope::bound(double r) const {
  const double u = 0.5 * r * r;
  double total = 0.0;
  for (const auto& comp : components_) {
    double amp = 0.0;
    for (std::size_t n = 0; n < comp.abs_coeffs.size(); ++n) {
      if (comp.abs_coeffs[n] == 0.0) continue;
      amp += comp.abs_coeffs[n] * displaced_overlap_bound(static_cast<int>(n), n0_, u);
    }
    total += comp.weight * amp * amp;
  }
  return total / (2.0 * std::numbers::pi);
}

double TailEnvelope::tail_integral(double alpha, double radius, int power) const {
  if (components_.empty()) return 0.0;
  const double a = std::min(alpha, 1.0);
  const double r_end =
      std::max(radius, 2.0 * std::sqrt(2.0 * (support_ + n0_) + 2.0)) + 40.0 / std::sqrt(a) + 4.0;
  const int steps = 6000;
  const double h = (r_end - radius) / steps;
  double sum = 0.0;
  for (int s = 0; s <= steps; ++s) {
    const double r = radius + s * h;
    const double e = bound(r);
    const double term = e > 0.0 ? std::pow(e, alpha) * std::pow(r, power + 1) : 0.0;
    sum += (s == 0 || s == steps) ? 0.5 * term : term;
  }
  return 2.0 * std::numbers::pi * h * sum;
}

double TailEnvelope::suggested_extent(double alpha, double threshold, int power) const {
  double r = required_extent(support_, n0_);
  while (r < 500.0 && tail_integral(alpha, r, power) >= threshold) r += 0.25;
  return r;
}

}  // namespace nxent
