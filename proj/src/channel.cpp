#include "softnc/channel.hpp"

#include <cmath>
#include <limits>

namespace softnc {

std::vector<double> bpsk_modulate(const BitFrame& bits) {
  std::vector<double> symbols(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    symbols[i] = bits[i] ? -1.0 : 1.0;
  }
  return symbols;
}

ObservationFrame transmit(const std::vector<double>& symbols, const ChannelParams& params,
                          Rng& rng) {
  ObservationFrame obs;
  obs.noise_variance = db_to_noise_variance(params.snr);
  if (params.snr.is_absent()) {
    obs.absent = true;
    obs.samples.assign(symbols.size(), 0.0);
    return obs;
  }
  obs.samples.resize(symbols.size());
  if (obs.noise_variance == 0.0) {
    obs.samples = symbols;
    return obs;
  }
  const double sigma = std::sqrt(obs.noise_variance);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    obs.samples[i] = symbols[i] + rng.normal(0.0, sigma);
  }
  return obs;
}

LlrFrame channel_llr(const ObservationFrame& obs) {
  LlrFrame llrs(obs.samples.size(), 0.0);
  if (obs.absent) return llrs;
  if (obs.noise_variance == 0.0) {
    for (std::size_t i = 0; i < obs.samples.size(); ++i) {
      if (obs.samples[i] > 0.0) {
        llrs[i] = -kLlrMax;
      } else if (obs.samples[i] < 0.0) {
        llrs[i] = kLlrMax;
      }
    }
    return llrs;
  }
  const double scale = -2.0 / obs.noise_variance;
  for (std::size_t i = 0; i < obs.samples.size(); ++i) {
    llrs[i] = clamp_llr(scale * obs.samples[i]);
  }
  return llrs;
}

}  // namespace softnc
