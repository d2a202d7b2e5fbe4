#include "softnc/bcjr.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace softnc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

LlrFrame flatten(const CodeLlr& c) {
  if (c.sys.size() != c.par.size()) {
    throw std::invalid_argument("systematic/parity length mismatch");
  }
  LlrFrame flat;
  flat.reserve(2 * c.sys.size());
  flat.insert(flat.end(), c.sys.begin(), c.sys.end());
  flat.insert(flat.end(), c.par.begin(), c.par.end());
  return flat;
}

CodeLlr unflatten(const LlrFrame& flat) {
  if (flat.size() % 2 != 0) {
    throw std::invalid_argument("flat code LLR frame must have even length");
  }
  const std::size_t n = flat.size() / 2;
  CodeLlr c;
  c.sys.assign(flat.begin(), flat.begin() + n);
  c.par.assign(flat.begin() + n, flat.end());
  return c;
}

BcjrResult bcjr_decode(const CodeLlr& channel, const CodeLlr& apriori, const Trellis& trellis,
                       std::size_t info_len) {
  const std::size_t n = channel.sys.size();
  if (channel.par.size() != n || apriori.sys.size() != n || apriori.par.size() != n) {
    throw std::invalid_argument("channel/apriori frames must all have equal length");
  }
  if (info_len == 0 || info_len + static_cast<std::size_t>(trellis.memory) != n) {
    throw std::invalid_argument("frame length must equal info_len + memory");
  }

  const int S = trellis.num_states;

  // Branch metric of taking input u from state s in section k, up to a
  // per-section constant that cancels in every LLR.
  auto gamma = [&](std::size_t k, int s, int u) {
    const double bit_metric = channel.sys[k] + apriori.sys[k];
    const double par_metric = channel.par[k] + apriori.par[k];
    double g = 0.0;
    if (u) g += bit_metric;
    if (trellis.parity[s][u]) g += par_metric;
    return g;
  };

  std::vector<std::vector<double>> alpha(n + 1, std::vector<double>(S, kNegInf));
  std::vector<std::vector<double>> beta(n + 1, std::vector<double>(S, kNegInf));
  alpha[0][0] = 0.0;
  beta[n][0] = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    auto& cur = alpha[k];
    auto& nxt = alpha[k + 1];
    for (int s = 0; s < S; ++s) {
      if (cur[s] == kNegInf) continue;
      for (int u = 0; u < 2; ++u) {
        const int ns = trellis.next_state[s][u];
        nxt[ns] = max_star(nxt[ns], cur[s] + gamma(k, s, u));
      }
    }
    const double peak = *std::max_element(nxt.begin(), nxt.end());
    if (peak != kNegInf) {
      for (double& v : nxt) v -= peak;
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    auto& cur = beta[k];
    const auto& nxt = beta[k + 1];
    for (int s = 0; s < S; ++s) {
      for (int u = 0; u < 2; ++u) {
        const double tail = nxt[trellis.next_state[s][u]];
        if (tail == kNegInf) continue;
        cur[s] = max_star(cur[s], gamma(k, s, u) + tail);
      }
    }
    const double peak = *std::max_element(cur.begin(), cur.end());
    if (peak != kNegInf) {
      for (double& v : cur) v -= peak;
    }
  }

  BcjrResult result;
  result.info_posterior.resize(info_len);
  result.code_extrinsic.sys.resize(n);
  result.code_extrinsic.par.resize(n);
  result.code_posterior.sys.resize(n);
  result.code_posterior.par.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    double acc_sys[2] = {kNegInf, kNegInf};
    double acc_par[2] = {kNegInf, kNegInf};
    for (int s = 0; s < S; ++s) {
      if (alpha[k][s] == kNegInf) continue;
      for (int u = 0; u < 2; ++u) {
        const double tail = beta[k + 1][trellis.next_state[s][u]];
        if (tail == kNegInf) continue;
        const double metric = alpha[k][s] + gamma(k, s, u) + tail;
        acc_sys[u] = max_star(acc_sys[u], metric);
        acc_par[trellis.parity[s][u]] = max_star(acc_par[trellis.parity[s][u]], metric);
      }
    }
    const double post_sys = acc_sys[1] - acc_sys[0];
    const double post_par = acc_par[1] - acc_par[0];
    result.code_extrinsic.sys[k] = clamp_llr(post_sys - channel.sys[k] - apriori.sys[k]);
    result.code_extrinsic.par[k] = clamp_llr(post_par - channel.par[k] - apriori.par[k]);
    result.code_posterior.sys[k] = clamp_llr(post_sys);
    result.code_posterior.par[k] = clamp_llr(post_par);
    if (k < info_len) result.info_posterior[k] = result.code_posterior.sys[k];
  }
  return result;
}

}  // namespace softnc
