#pragma once

#include <cstddef>

#include "softnc/bcjr.hpp"
#include "softnc/channel.hpp"
#include "softnc/permutation.hpp"

namespace softnc {

// What the relay puts on the air: soft estimates of the network-coded bits
// x_r[k] = c1[k] xor c2[pi(k)], scaled to unit average power.
struct RelayFrame {
  std::vector<double> values;  // transmitted analog samples, unit mean power
  double power_scale = 1.0;    // multiply received samples by this to undo the scaling
};

struct RelayConfig {
  SnrSpec snr_sr1;  // source 1 -> relay
  SnrSpec snr_sr2;  // source 2 -> relay
};

// Full relay processing chain: BCJR on each source's observation, permute the
// second code-bit LLR frame, combine with boxplus, normalize. llr_sr1/llr_sr2
// are the channel LLRs of the two source-to-relay observations in flat
// [sys | par] layout.
RelayFrame relay_process(const LlrFrame& llr_sr1, const LlrFrame& llr_sr2,
                         const Trellis& trellis, const Permutation& perm, std::size_t info_len);

// The combining step alone: elementwise boxplus of the (already permuted)
// soft code bits, then power normalization.
RelayFrame combine_and_normalize(const LlrFrame& l1, const LlrFrame& l2_permuted);

}  // namespace softnc
