#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "softnc/bits.hpp"
#include "softnc/llr.hpp"
#include "softnc/rng.hpp"

namespace softnc {

// J(sigma): mutual information between a bit and a consistent Gaussian LLR
// with mean sigma^2/2 and variance sigma^2 (conditioned on the bit). Strictly
// increasing from J(0) = 0 toward 1.
double j_function(double sigma);

// Inverse of j_function on [0, 1). Values at or above the cap saturate.
double j_inverse(double mutual_info);

// Synthetic a-priori LLRs consistent with mutual information target_mi about
// the given bits: L = +/- sigma^2/2 + sigma * z under the L = log P(1)/P(0)
// convention (positive mean for bit 1).
LlrFrame generate_apriori(const BitFrame& bits, double target_mi, Rng& rng);

// Sample estimate of I(X; L) for equiprobable bits, via the ergodic average
// of 1 - log2(1 + e^{-sign * L}).
double measure_mutual_information(const LlrFrame& llrs, const BitFrame& bits);

struct ExitPoint {
  double input_mi = 0.0;
  double output_mi = 0.0;
};

struct ExitSettings {
  std::size_t info_len = 1024;
  std::size_t samples_per_point = 200000;  // code-bit samples per grid point
  double grid_step = 0.05;
  std::uint64_t seed = 1;
};

// Transfer curve of the relay check node. The relay's soft bit is modeled as
// y_r = phi(x1 xor x2) + n with noise set by snr_r; the curve maps the
// quality of the companion decoder's extrinsic to the quality of what the
// check node hands the decoder of interest.
std::vector<ExitPoint> check_node_curve(SnrSpec snr_r, const ExitSettings& settings);

// Transfer curve of one constituent BCJR decoder at the given direct-link
// SNR: Gaussian a-priori on all code bits in, code-extrinsic information out.
std::vector<ExitPoint> decoder_curve(SnrSpec snr_sd, const ExitSettings& settings);

struct TrajectorySettings {
  SnrSpec snr_sd;
  SnrSpec snr_r;
  int max_steps = 20;
  std::size_t info_len = 1024;
  std::size_t samples_per_point = 200000;
  std::uint64_t seed = 1;
};

struct Trajectory {
  std::vector<double> predicted;  // I after each half-iteration of the staircase
  std::vector<double> measured;   // decoder extrinsic MI measured per iteration
};

// Staircase between the two curves (linear interpolation on the grid), plus
// the trajectory actually measured by running the iterative decoder against a
// synthetic relay observation.
Trajectory simulate_trajectory(const TrajectorySettings& settings);

}  // namespace softnc
