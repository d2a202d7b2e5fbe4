#include "softnc/destination.hpp"

#include <stdexcept>

#include "softnc/errors.hpp"

namespace softnc {

LlrFrame relay_observation_llr(const ObservationFrame& obs, double power_scale,
                               RelayLlrMode mode) {
  LlrFrame llrs(obs.samples.size(), 0.0);
  if (obs.absent) return llrs;
  if (power_scale <= 0.0) throw std::invalid_argument("power_scale must be positive");
  double gain = power_scale;
  if (mode == RelayLlrMode::scaled) {
    gain /= 1.0 + obs.noise_variance;  // linear-MMSE shrink toward zero
  }
  for (std::size_t i = 0; i < obs.samples.size(); ++i) {
    llrs[i] = clamp_llr(gain * obs.samples[i]);
  }
  return llrs;
}

LlrFrame check_node_toward_2(const LlrFrame& l_r_obs, const LlrFrame& extrinsic1,
                             const Permutation& perm) {
  if (l_r_obs.size() != extrinsic1.size() || l_r_obs.size() != perm.size()) {
    throw std::invalid_argument("check node inputs must match the permutation length");
  }
  LlrFrame combined(l_r_obs.size());
  for (std::size_t k = 0; k < combined.size(); ++k) {
    combined[k] = clamp_llr(boxplus(l_r_obs[k], extrinsic1[k]));
  }
  // combined[k] talks about c2[perm(k)], so route it back through the permutation
  return perm.invert(combined);
}

LlrFrame check_node_toward_1(const LlrFrame& l_r_obs, const LlrFrame& extrinsic2,
                             const Permutation& perm) {
  if (l_r_obs.size() != extrinsic2.size() || l_r_obs.size() != perm.size()) {
    throw std::invalid_argument("check node inputs must match the permutation length");
  }
  const LlrFrame e2_aligned = perm.apply(extrinsic2);
  LlrFrame out(l_r_obs.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = clamp_llr(boxplus(l_r_obs[k], e2_aligned[k]));
  }
  return out;
}

namespace {

BitFrame hard_decisions(const LlrFrame& posteriors) {
  BitFrame bits(posteriors.size());
  for (std::size_t i = 0; i < posteriors.size(); ++i) {
    bits[i] = posteriors[i] > 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace

DecodeResult joint_decode(const LlrFrame& llr_sd1, const LlrFrame& llr_sd2,
                          const LlrFrame& l_r_obs, const Trellis& trellis,
                          const Permutation& perm, std::size_t info_len,
                          const DecoderConfig& config) {
  const std::size_t n = info_len + static_cast<std::size_t>(trellis.memory);
  if (llr_sd1.size() != 2 * n || llr_sd2.size() != 2 * n || l_r_obs.size() != 2 * n) {
    throw std::invalid_argument("decoder inputs must cover all code bits of both sources");
  }
  if (perm.size() != 2 * n) {
    throw std::invalid_argument("permutation must span the flat code-bit frame");
  }
  if (config.max_iterations < 1) throw std::invalid_argument("need at least one iteration");

  const CodeLlr ch1 = unflatten(llr_sd1);
  const CodeLlr ch2 = unflatten(llr_sd2);

  DecodeResult result;
  CodeLlr apriori1 = CodeLlr::zeros(n);
  bool have_previous = false;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const BcjrResult r1 = bcjr_decode(ch1, apriori1, trellis, info_len);
    const LlrFrame apr2 = check_node_toward_2(l_r_obs, flatten(r1.code_extrinsic), perm);
    const BcjrResult r2 = bcjr_decode(ch2, unflatten(apr2), trellis, info_len);
    apriori1 = unflatten(check_node_toward_1(l_r_obs, flatten(r2.code_extrinsic), perm));

    BitFrame d1 = hard_decisions(r1.info_posterior);
    BitFrame d2 = hard_decisions(r2.info_posterior);
    result.iterations_used = iter;

    if (have_previous && d1 == result.decisions1 && d2 == result.decisions2) {
      result.decisions1 = std::move(d1);
      result.decisions2 = std::move(d2);
      result.posterior1 = r1.info_posterior;
      result.posterior2 = r2.info_posterior;
      result.converged = true;
      if (config.early_stop) break;
    } else {
      result.decisions1 = std::move(d1);
      result.decisions2 = std::move(d2);
      result.posterior1 = r1.info_posterior;
      result.posterior2 = r2.info_posterior;
      result.converged = false;
      have_previous = true;
    }
  }
  return result;
}

}  // namespace softnc
