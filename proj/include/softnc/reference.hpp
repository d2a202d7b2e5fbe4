#pragma once

#include <cstddef>
#include <vector>

#include "softnc/bcjr.hpp"
#include "softnc/bits.hpp"
#include "softnc/convcode.hpp"
#include "softnc/llr.hpp"

namespace softnc::reference {

// Slow, independent implementations used to cross-check the fast paths.
// Everything here works in plain probabilities or by brute-force enumeration
// and deliberately shares no code with the production routines.

// boxplus computed in the probability domain.
double boxplus_prob(double l1, double l2);

// Encoder driven by an explicit register vector instead of bit tricks.
CodewordFrame encode_shift_register(const BitFrame& info, const GeneratorSpec& spec);

// Exact posterior LLRs of every info bit by summing P(y | u) over all 2^K
// terminated information words. Only feasible for small K.
LlrFrame map_posteriors_exhaustive(const CodeLlr& channel, const CodeLlr& apriori,
                                   const GeneratorSpec& spec, std::size_t info_len);

// Joint MAP over both sources' info words given direct observations of each
// codeword plus noiseless knowledge that x_r[k] = c1[k] xor c2[perm[k]].
// Returns posterior LLRs for source 1's info bits. Enumerates 2^(2K) pairs.
LlrFrame joint_map_with_xor_constraint(const CodeLlr& ch1, const CodeLlr& ch2,
                                       const std::vector<double>& relay_values,
                                       double relay_noise_variance,
                                       const std::vector<std::size_t>& perm_mapping,
                                       const GeneratorSpec& spec, std::size_t info_len);

// I(X; L) for a consistent Gaussian LLR channel, by Gauss-Hermite quadrature.
// Matches j_function without sampling.
double gaussian_llr_mutual_info(double sigma, int nodes = 96);

}  // namespace softnc::reference
