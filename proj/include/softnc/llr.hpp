#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace softnc {

// LLR convention used everywhere in this library:
//
//   L = log P(x = 1) / P(x = 0)
//
// combined with the BPSK map 0 -> +1, 1 -> -1, so channel LLRs come out as
// L = -2 y / sigma^2. The convention is fixed once here and asserted by
// round-trip tests; do not flip signs locally.

// Saturation limit for every LLR in the system. 25 corresponds to an error
// probability of about 1.4e-11, far below anything resolvable by simulation,
// while keeping exp() of any clamped value finite.
inline constexpr double kLlrMax = 25.0;

using LlrFrame = std::vector<double>;

inline double clamp_llr(double l) { return std::clamp(l, -kLlrMax, kLlrMax); }

inline void clamp_frame(LlrFrame& frame) {
  for (double& l : frame) l = clamp_llr(l);
}

// Jacobian logarithm max*(a,b) = log(e^a + e^b). Exact log-MAP building block.
inline double max_star(double a, double b) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double m = std::max(a, b);
  const double d = std::abs(a - b);
  if (d > 40.0) return m;  // correction term < 5e-18, below any tolerance used
  return m + std::log1p(std::exp(-d));
}

// LLR of x1 XOR x2 from independent LLRs of x1 and x2:
//
//   log( (e^{l1} + e^{l2}) / (1 + e^{l1 + l2}) )
//
// evaluated as max*(l1,l2) - max*(0, l1+l2) so |l| = kLlrMax cannot overflow.
inline double boxplus(double l1, double l2) {
  return max_star(l1, l2) - max_star(0.0, l1 + l2);
}

// SNR in dB under the E_s/N_0 convention with unit symbol energy.
// -infinity is the documented "link absent" state.
struct SnrSpec {
  double value_db = 0.0;

  static constexpr SnrSpec absent() {
    return SnrSpec{-std::numeric_limits<double>::infinity()};
  }
  constexpr bool is_absent() const {
    return value_db == -std::numeric_limits<double>::infinity();
  }
};

// sigma^2 = N_0/2 = 1 / (2 * 10^(snr_db/10)) with E_s = 1.
// Absent link -> infinite variance.
inline double db_to_noise_variance(SnrSpec snr) {
  if (snr.is_absent()) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * std::pow(10.0, snr.value_db / 10.0));
}

}  // namespace softnc
