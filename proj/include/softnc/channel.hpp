#pragma once

#include <vector>

#include "softnc/bits.hpp"
#include "softnc/llr.hpp"
#include "softnc/rng.hpp"

namespace softnc {

enum class LinkId {
  source1_dest,
  source2_dest,
  source1_relay,
  source2_relay,
  relay_dest,
};

struct ChannelParams {
  SnrSpec snr;
  LinkId link = LinkId::source1_dest;
};

// One noisy frame as seen by a receiver. An absent link (snr = -inf) yields
// no usable observation; receivers must treat it as zero-information.
struct ObservationFrame {
  std::vector<double> samples;
  double noise_variance = 1.0;
  bool absent = false;
};

// 0 -> +1, 1 -> -1.
std::vector<double> bpsk_modulate(const BitFrame& bits);

// y = x + n with n ~ N(0, sigma^2). sigma^2 = 0 passes the input through,
// sigma^2 = inf marks the frame absent.
ObservationFrame transmit(const std::vector<double>& symbols, const ChannelParams& params,
                          Rng& rng);

// L(x) = -2y / sigma^2 under the L = log P(1)/P(0) convention, clamped.
// A noiseless link saturates to +/-kLlrMax; an absent link gives all zeros.
LlrFrame channel_llr(const ObservationFrame& obs);

}  // namespace softnc
