#include "softnc/relay.hpp"

#include <cmath>
#include <stdexcept>

namespace softnc {

RelayFrame combine_and_normalize(const LlrFrame& l1, const LlrFrame& l2_permuted) {
  if (l1.size() != l2_permuted.size()) {
    throw std::invalid_argument("combine inputs must have equal length");
  }
  RelayFrame frame;
  frame.values.resize(l1.size());
  double power = 0.0;
  for (std::size_t i = 0; i < l1.size(); ++i) {
    const double v = clamp_llr(boxplus(l1[i], l2_permuted[i]));
    frame.values[i] = v;
    power += v * v;
  }
  if (!frame.values.empty()) power /= static_cast<double>(frame.values.size());
  frame.power_scale = power > 0.0 ? std::sqrt(power) : 1.0;
  for (double& v : frame.values) v /= frame.power_scale;
  return frame;
}

RelayFrame relay_process(const LlrFrame& llr_sr1, const LlrFrame& llr_sr2,
                         const Trellis& trellis, const Permutation& perm,
                         std::size_t info_len) {
  const std::size_t n = info_len + static_cast<std::size_t>(trellis.memory);
  if (llr_sr1.size() != 2 * n || llr_sr2.size() != 2 * n) {
    throw std::invalid_argument("relay input frames must cover all code bits");
  }
  if (perm.size() != 2 * n) {
    throw std::invalid_argument("permutation must span the flat code-bit frame");
  }
  const CodeLlr zeros = CodeLlr::zeros(n);
  const BcjrResult r1 = bcjr_decode(unflatten(llr_sr1), zeros, trellis, info_len);
  const BcjrResult r2 = bcjr_decode(unflatten(llr_sr2), zeros, trellis, info_len);

  const LlrFrame soft1 = flatten(r1.code_posterior);
  LlrFrame soft2 = perm.apply(flatten(r2.code_posterior));
  return combine_and_normalize(soft1, soft2);
}

}  // namespace softnc
