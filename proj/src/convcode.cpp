#include "softnc/convcode.hpp"

#include <bit>
#include <stdexcept>

#include "softnc/errors.hpp"

namespace softnc {

namespace {

inline unsigned parity(unsigned v) { return std::popcount(v) & 1u; }

}  // namespace

Trellis build_trellis(const GeneratorSpec& spec) {
  if (spec.memory < 1 || spec.memory > 16) {
    throw std::invalid_argument("generator memory must be in [1, 16]");
  }
  const unsigned max_mask = (2u << spec.memory) - 1u;
  if (spec.feedback == 0 || spec.feedback > max_mask || spec.feedforward > max_mask) {
    throw std::invalid_argument("generator mask does not fit the stated memory");
  }
  if ((spec.feedback & 1u) == 0) {
    throw std::invalid_argument("feedback polynomial needs the D^0 term");
  }

  Trellis t;
  t.spec = spec;
  t.memory = spec.memory;
  t.num_states = 1 << spec.memory;
  t.next_state.resize(t.num_states);
  t.parity.resize(t.num_states);
  t.tail_input.resize(t.num_states);

  const unsigned state_mask = t.num_states - 1u;
  const unsigned fb_taps = spec.feedback >> 1;  // taps on the stored cells
  const unsigned ff_taps = spec.feedforward >> 1;

  for (unsigned s = 0; s < static_cast<unsigned>(t.num_states); ++s) {
    const unsigned fb = parity(fb_taps & s);
    t.tail_input[s] = static_cast<std::uint8_t>(fb);  // makes the new cell zero
    for (unsigned u = 0; u < 2; ++u) {
      const unsigned a = u ^ fb;  // value entering the register
      const unsigned p = ((spec.feedforward & 1u) & a) ^ parity(ff_taps & s);
      t.next_state[s][u] = static_cast<std::uint16_t>(((s << 1) | a) & state_mask);
      t.parity[s][u] = static_cast<std::uint8_t>(p);
    }
  }
  return t;
}

CodewordFrame encode(const BitFrame& info, const Trellis& trellis) {
  const std::size_t n = info.size() + static_cast<std::size_t>(trellis.memory);
  CodewordFrame out;
  out.systematic.reserve(n);
  out.parity.reserve(n);

  unsigned state = 0;
  for (std::uint8_t bit : info) {
    if (bit > 1) throw std::invalid_argument("info bits must be 0 or 1");
    out.systematic.push_back(bit);
    out.parity.push_back(trellis.parity[state][bit]);
    state = trellis.next_state[state][bit];
  }
  for (int i = 0; i < trellis.memory; ++i) {
    const std::uint8_t bit = trellis.tail_input[state];
    out.systematic.push_back(bit);
    out.parity.push_back(trellis.parity[state][bit]);
    state = trellis.next_state[state][bit];
  }
  if (state != 0) throw InternalError("termination failed to reach the zero state");
  return out;
}

}  // namespace softnc
