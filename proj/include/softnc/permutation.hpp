#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "softnc/rng.hpp"

namespace softnc {

// Pseudo-random bijection on {0..n-1}, reproducible from (seed, n).
// Built by seeded Fisher-Yates. The same object is used by the relay (to
// permute the second source's LLRs) and by the destination (to route check
// node messages), which models the two ends sharing the interleaver seed.
class Permutation {
 public:
  Permutation(std::uint64_t seed, std::size_t n) : seed_(seed), mapping_(n) {
    if (n == 0) throw std::invalid_argument("Permutation: n must be >= 1");
    for (std::size_t i = 0; i < n; ++i) mapping_[i] = static_cast<std::uint32_t>(i);
    Rng rng(derive_seed(seed, 0x7065726dULL));  // "perm"
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = rng.bounded(static_cast<std::uint32_t>(i + 1));
      std::swap(mapping_[i], mapping_[j]);
    }
  }

  std::size_t size() const { return mapping_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<std::uint32_t>& mapping() const { return mapping_; }

  // out[i] = in[mapping[i]]
  template <class T>
  std::vector<T> apply(const std::vector<T>& in) const {
    require_size(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[mapping_[i]];
    return out;
  }

  // invert(apply(x)) == x
  template <class T>
  std::vector<T> invert(const std::vector<T>& in) const {
    require_size(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[mapping_[i]] = in[i];
    return out;
  }

 private:
  void require_size(std::size_t n) const {
    if (n != mapping_.size())
      throw std::invalid_argument("Permutation: frame length mismatch");
  }

  std::uint64_t seed_;
  std::vector<std::uint32_t> mapping_;
};

}  // namespace softnc
