#pragma once

#include <cstddef>
#include <vector>

#include "softnc/convcode.hpp"
#include "softnc/llr.hpp"

namespace softnc {

// LLRs attached to every code bit of a terminated frame, systematic and
// parity streams separately. Both have length K + m.
struct CodeLlr {
  LlrFrame sys;
  LlrFrame par;

  std::size_t section_count() const { return sys.size(); }
  static CodeLlr zeros(std::size_t n) { return {LlrFrame(n, 0.0), LlrFrame(n, 0.0)}; }
};

// Flat layout [sys | par], the order code bits travel through interleavers.
LlrFrame flatten(const CodeLlr& c);
CodeLlr unflatten(const LlrFrame& flat);

struct BcjrResult {
  LlrFrame info_posterior;   // length K, a-posteriori LLRs of the info bits
  CodeLlr code_extrinsic;    // length K+m, posterior minus channel minus a-priori
  CodeLlr code_posterior;    // length K+m
};

// Exact log-domain BCJR over the terminated trellis. channel and apriori both
// span the full K+m sections; the decoder is pinned to state 0 at both ends,
// so paths that ignore the termination contribute nothing. info_len selects
// how many leading sections carry free info bits.
BcjrResult bcjr_decode(const CodeLlr& channel, const CodeLlr& apriori, const Trellis& trellis,
                       std::size_t info_len);

}  // namespace softnc
