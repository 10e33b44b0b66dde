#pragma once

#include "nxent/probability.hpp"
#include "nxent/transform.hpp"

namespace nxent {

/// Order (Renyi) or degree (Tsallis) alpha > 0; alpha == 1 selects the
/// Shannon limit.
class EntropyOrder {
 public:
  explicit EntropyOrder(double alpha);
  double value() const noexcept { return alpha_; }
  bool is_shannon() const noexcept { return alpha_ == 1.0; }

 private:
  double alpha_;
};

/// Entries below this are exact zeros: 0^alpha = 0 for every alpha > 0.
inline constexpr double kZeroProbability = 1e-300;

/// Bound on the mass of w^alpha that the grid may miss when alpha < 1.
inline constexpr double kTailThreshold = 1e-10;

/// ln_alpha x = (x^(1-alpha) - 1) / (1 - alpha); ln x at alpha = 1.
double alpha_log(double x, EntropyOrder alpha);

double shannon_discrete(const DiscreteDist& s);
double renyi_discrete(const DiscreteDist& s, EntropyOrder alpha);
double tsallis_discrete(const DiscreteDist& s, EntropyOrder alpha);

/// sum_n s_n^alpha and its 1/alpha power.
double power_sum(const DiscreteDist& s, EntropyOrder alpha);
double norm_functional(const DiscreteDist& s, EntropyOrder alpha);

/// Throws TailError when alpha < 1 and the envelope bound on the missed
/// mass of w^alpha exceeds kTailThreshold.
void check_tail(const PhaseDensity& w, EntropyOrder alpha);

/// Trapezoid integral of w^alpha (tail-checked).
double power_integral(const PhaseDensity& w, EntropyOrder alpha);
double norm_functional_continuous(const PhaseDensity& w, EntropyOrder alpha);

double shannon_continuous(const PhaseDensity& w);
double renyi_continuous(const PhaseDensity& w, EntropyOrder alpha);
double tsallis_continuous(const PhaseDensity& w, EntropyOrder alpha);

}  // namespace nxent
