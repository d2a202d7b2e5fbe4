#include "softnc/reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace softnc::reference {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

double softplus_bits(double x) {
  if (x > 40.0) return std::exp(-x) / std::log(2.0);
  if (x < -40.0) return -x / std::log(2.0);
  return std::log1p(std::exp(-x)) / std::log(2.0);
}

// log P(y | u) up to a constant shared by all info words
double word_weight(const CodewordFrame& cw, const CodeLlr& channel, const CodeLlr& apriori) {
  double w = 0.0;
  for (std::size_t k = 0; k < cw.systematic.size(); ++k) {
    if (cw.systematic[k]) w += channel.sys[k] + apriori.sys[k];
    if (cw.parity[k]) w += channel.par[k] + apriori.par[k];
  }
  return w;
}

BitFrame word_to_bits(unsigned long long word, std::size_t len) {
  BitFrame bits(len);
  for (std::size_t k = 0; k < len; ++k) {
    bits[k] = static_cast<std::uint8_t>((word >> k) & 1u);
  }
  return bits;
}

}  // namespace

double boxplus_prob(double l1, double l2) {
  const double p1 = sigmoid(l1), q1 = sigmoid(-l1);
  const double p2 = sigmoid(l2), q2 = sigmoid(-l2);
  const double p_xor = p1 * q2 + p2 * q1;
  const double p_same = p1 * p2 + q1 * q2;
  return std::log(p_xor) - std::log(p_same);
}

CodewordFrame encode_shift_register(const BitFrame& info, const GeneratorSpec& spec) {
  if (spec.memory < 1) throw std::invalid_argument("memory must be positive");
  if ((spec.feedback & 1u) == 0) throw std::invalid_argument("feedback needs the D^0 term");

  std::vector<std::uint8_t> reg(spec.memory, 0);  // reg[0] is the newest cell
  CodewordFrame out;

  auto feedback_sum = [&] {
    std::uint8_t acc = 0;
    for (int j = 1; j <= spec.memory; ++j) {
      if ((spec.feedback >> j) & 1u) acc ^= reg[j - 1];
    }
    return acc;
  };
  auto step = [&](std::uint8_t u) {
    const std::uint8_t a = u ^ feedback_sum();
    std::uint8_t p = (spec.feedforward & 1u) ? a : 0;
    for (int j = 1; j <= spec.memory; ++j) {
      if ((spec.feedforward >> j) & 1u) p ^= reg[j - 1];
    }
    reg.insert(reg.begin(), a);
    reg.pop_back();
    out.systematic.push_back(u);
    out.parity.push_back(p);
  };

  for (std::uint8_t bit : info) step(bit);
  for (int i = 0; i < spec.memory; ++i) step(feedback_sum());
  return out;
}

LlrFrame map_posteriors_exhaustive(const CodeLlr& channel, const CodeLlr& apriori,
                                   const GeneratorSpec& spec, std::size_t info_len) {
  if (info_len == 0 || info_len > 20) {
    throw std::invalid_argument("exhaustive search only works for small frames");
  }
  const std::size_t n = info_len + static_cast<std::size_t>(spec.memory);
  if (channel.sys.size() != n || channel.par.size() != n || apriori.sys.size() != n ||
      apriori.par.size() != n) {
    throw std::invalid_argument("frame length must equal info_len + memory");
  }

  std::vector<std::array<double, 2>> acc(info_len, {kNegInf, kNegInf});
  const unsigned long long words = 1ull << info_len;
  for (unsigned long long word = 0; word < words; ++word) {
    const BitFrame info = word_to_bits(word, info_len);
    const double w = word_weight(encode_shift_register(info, spec), channel, apriori);
    for (std::size_t k = 0; k < info_len; ++k) {
      acc[k][info[k]] = logaddexp(acc[k][info[k]], w);
    }
  }

  LlrFrame posteriors(info_len);
  for (std::size_t k = 0; k < info_len; ++k) {
    posteriors[k] = clamp_llr(acc[k][1] - acc[k][0]);
  }
  return posteriors;
}

LlrFrame joint_map_with_xor_constraint(const CodeLlr& ch1, const CodeLlr& ch2,
                                       const std::vector<double>& relay_values,
                                       double relay_noise_variance,
                                       const std::vector<std::size_t>& perm_mapping,
                                       const GeneratorSpec& spec, std::size_t info_len) {
  if (info_len == 0 || info_len > 8) {
    throw std::invalid_argument("joint enumeration only works for tiny frames");
  }
  const std::size_t n = info_len + static_cast<std::size_t>(spec.memory);
  if (relay_values.size() != 2 * n || perm_mapping.size() != 2 * n) {
    throw std::invalid_argument("relay frame must cover all code bits");
  }

  const CodeLlr zero = CodeLlr::zeros(n);
  const unsigned long long words = 1ull << info_len;

  std::vector<double> weight1(words), weight2(words);
  std::vector<BitFrame> flat(words);
  for (unsigned long long w = 0; w < words; ++w) {
    const BitFrame info = word_to_bits(w, info_len);
    const CodewordFrame cw = encode_shift_register(info, spec);
    weight1[w] = word_weight(cw, ch1, zero);
    weight2[w] = word_weight(cw, ch2, zero);
    flat[w] = cw.systematic;
    flat[w].insert(flat[w].end(), cw.parity.begin(), cw.parity.end());
  }

  const bool relay_absent = std::isinf(relay_noise_variance) && relay_noise_variance > 0.0;

  std::vector<std::array<double, 2>> acc(info_len, {kNegInf, kNegInf});
  for (unsigned long long w1 = 0; w1 < words; ++w1) {
    for (unsigned long long w2 = 0; w2 < words; ++w2) {
      double weight = weight1[w1] + weight2[w2];
      if (!relay_absent) {
        for (std::size_t k = 0; k < 2 * n; ++k) {
          const std::uint8_t xr = flat[w1][k] ^ flat[w2][perm_mapping[k]];
          const double sym = xr ? -1.0 : 1.0;
          const double d = relay_values[k] - sym;
          if (relay_noise_variance == 0.0) {
            if (d != 0.0) {
              weight = kNegInf;
              break;
            }
          } else {
            weight -= d * d / (2.0 * relay_noise_variance);
          }
        }
      }
      if (weight == kNegInf) continue;
      for (std::size_t k = 0; k < info_len; ++k) {
        const std::uint8_t bit = (w1 >> k) & 1u;
        acc[k][bit] = logaddexp(acc[k][bit], weight);
      }
    }
  }

  LlrFrame posteriors(info_len);
  for (std::size_t k = 0; k < info_len; ++k) {
    posteriors[k] = clamp_llr(acc[k][1] - acc[k][0]);
  }
  return posteriors;
}

double gaussian_llr_mutual_info(double sigma, int nodes) {
  if (sigma <= 0.0) return 0.0;
  if (nodes < 2 || nodes > 256) throw std::invalid_argument("node count out of range");

  // Gauss-Hermite abscissas and weights by Newton iteration on the
  // orthonormal recurrence.
  std::vector<double> x(nodes), w(nodes);
  const int m = (nodes + 1) / 2;
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * nodes + 1.0) - 1.85575 * std::pow(2.0 * nodes + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(nodes, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * nodes) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14) break;
    }
    x[i] = z;
    x[nodes - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[nodes - 1 - i] = w[i];
  }

  const double inv_sqrt_pi = 0.5641895835477563;
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double llr = 0.5 * sigma * sigma + sigma * std::sqrt(2.0) * x[i];
    acc += w[i] * softplus_bits(llr);
  }
  return 1.0 - inv_sqrt_pi * acc;
}

}  // namespace softnc::reference
