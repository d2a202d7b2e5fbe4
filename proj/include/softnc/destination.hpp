#pragma once

#include <cstddef>
#include <vector>

#include "softnc/bcjr.hpp"
#include "softnc/channel.hpp"
#include "softnc/permutation.hpp"

namespace softnc {

// How the destination turns relay samples into LLRs of x_r.
enum class RelayLlrMode {
  raw,     // undo the power scaling, clamp
  scaled,  // additionally shrink by 1/(1 + sigma_rd^2) to discount relay noise
};

struct DecoderConfig {
  int max_iterations = 10;
  bool early_stop = true;
  RelayLlrMode relay_mode = RelayLlrMode::scaled;
};

struct DecodeResult {
  BitFrame decisions1;        // length K
  BitFrame decisions2;        // length K
  LlrFrame posterior1;        // info-bit posteriors, length K
  LlrFrame posterior2;
  int iterations_used = 0;
  bool converged = false;     // early stop fired before the iteration cap
};

// Converts the relay observation into LLRs of the network-coded bits.
// Absent relay link gives all zeros.
LlrFrame relay_observation_llr(const ObservationFrame& obs, double power_scale,
                               RelayLlrMode mode);

// Iterative joint decoder. llr_sd1/llr_sd2 are flat [sys | par] channel LLRs
// of the two direct links, l_r_obs the relay-bit LLRs (length 2(K+m), aligned
// with decoder 1's flat layout). Each iteration runs decoder 1, updates the
// relay check nodes toward decoder 2, runs decoder 2, updates back.
DecodeResult joint_decode(const LlrFrame& llr_sd1, const LlrFrame& llr_sd2,
                          const LlrFrame& l_r_obs, const Trellis& trellis,
                          const Permutation& perm, std::size_t info_len,
                          const DecoderConfig& config);

// Check-node update toward one decoder: combine the relay-bit LLR with the
// other decoder's code extrinsic through boxplus, routed through the
// permutation so positions line up.
LlrFrame check_node_toward_2(const LlrFrame& l_r_obs, const LlrFrame& extrinsic1,
                             const Permutation& perm);
LlrFrame check_node_toward_1(const LlrFrame& l_r_obs, const LlrFrame& extrinsic2,
                             const Permutation& perm);

}  // namespace softnc
