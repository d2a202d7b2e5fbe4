#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "softnc/bits.hpp"

namespace softnc {

// Rate-1/2 recursive systematic convolutional code, described by feedforward
// and feedback polynomials in D. Bit i of a mask is the coefficient of D^i.
struct GeneratorSpec {
  unsigned feedforward = 0;
  unsigned feedback = 0;
  int memory = 0;

  // The 16-state constituent code of the original turbo codes:
  // (1, (1 + D^4) / (1 + D + D^2 + D^3 + D^4)).
  static GeneratorSpec turbo_16state() { return {0b10001u, 0b11111u, 4}; }

  // (1, 1 / (1 + D)), the smallest recursive systematic code.
  static GeneratorSpec accumulator() { return {0b01u, 0b11u, 1}; }
};

// State-transition tables derived from a GeneratorSpec. State bit j holds the
// register cell that was filled j+1 steps ago (bit 0 is the newest cell).
struct Trellis {
  GeneratorSpec spec;
  int memory = 0;
  int num_states = 0;
  std::vector<std::array<std::uint16_t, 2>> next_state;  // [state][input]
  std::vector<std::array<std::uint8_t, 2>> parity;       // [state][input]
  std::vector<std::uint8_t> tail_input;  // input that shifts a zero into the register
};

// Validates the spec and expands it into edge tables.
// Rejects feedback masks without the D^0 coefficient (not realizable) and
// masks that do not fit in memory+1 bits.
Trellis build_trellis(const GeneratorSpec& spec);

// Terminated codeword: K info bits plus m tail bits on both streams, chosen
// so the encoder ends in the all-zero state.
struct CodewordFrame {
  BitFrame systematic;  // length K + m
  BitFrame parity;      // length K + m
};

CodewordFrame encode(const BitFrame& info, const Trellis& trellis);

}  // namespace softnc
