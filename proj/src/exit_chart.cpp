#include "softnc/exit_chart.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softnc/bcjr.hpp"
#include "softnc/channel.hpp"
#include "softnc/convcode.hpp"
#include "softnc/destination.hpp"
#include "softnc/permutation.hpp"

namespace softnc {

namespace {

constexpr double kSigmaMax = 60.0;
constexpr double kLn2 = 0.6931471805599453;

// log2(1 + e^{-x}) without overflow at either end
double softplus_bits(double x) {
  if (x > 40.0) return std::exp(-x) / kLn2;
  if (x < -40.0) return -x / kLn2;
  return std::log1p(std::exp(-x)) / kLn2;
}

double gauss_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.141592653589793 * 1.0);
}

double j_integrand(double z, double sigma) {
  return gauss_pdf(z) * softplus_bits(0.5 * sigma * sigma + sigma * z);
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, double sigma) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = j_integrand(lm, sigma);
  const double frm = j_integrand(rm, sigma);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, sigma) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, sigma);
}

double expected_softplus(double sigma) {
  const double a = -12.0, b = 12.0;
  const double m = 0.5 * (a + b);
  const double fa = j_integrand(a, sigma);
  const double fm = j_integrand(m, sigma);
  const double fb = j_integrand(b, sigma);
  const double whole = simpson(a, b, fa, fm, fb);
  return adaptive_simpson(a, b, fa, fm, fb, whole, 1e-11, 40, sigma);
}

double accumulate_softplus(const LlrFrame& llrs, const BitFrame& bits) {
  double sum = 0.0;
  for (std::size_t i = 0; i < llrs.size(); ++i) {
    const double signed_llr = bits[i] ? llrs[i] : -llrs[i];
    sum += softplus_bits(signed_llr);
  }
  return sum;
}

std::vector<double> grid_points(double step) {
  if (step <= 0.0 || step > 1.0) throw std::invalid_argument("grid step must be in (0, 1]");
  std::vector<double> grid;
  const int n = static_cast<int>(std::lround(1.0 / step));
  grid.reserve(n + 1);
  for (int i = 0; i <= n; ++i) grid.push_back(std::min(1.0, i * step));
  grid.back() = 1.0;
  return grid;
}

double interpolate(const std::vector<ExitPoint>& curve, double x) {
  if (curve.empty()) throw std::invalid_argument("cannot interpolate an empty curve");
  if (x <= curve.front().input_mi) return curve.front().output_mi;
  if (x >= curve.back().input_mi) return curve.back().output_mi;
  auto hi = std::lower_bound(curve.begin(), curve.end(), x,
                             [](const ExitPoint& p, double v) { return p.input_mi < v; });
  auto lo = hi - 1;
  const double span = hi->input_mi - lo->input_mi;
  const double t = span > 0.0 ? (x - lo->input_mi) / span : 0.0;
  return lo->output_mi + t * (hi->output_mi - lo->output_mi);
}

}  // namespace

double j_function(double sigma) {
  if (sigma <= 0.0) return 0.0;
  if (sigma >= kSigmaMax) return 1.0;
  const double value = 1.0 - expected_softplus(sigma);
  return std::clamp(value, 0.0, 1.0);
}

double j_inverse(double mutual_info) {
  if (mutual_info <= 0.0) return 0.0;
  if (mutual_info >= 1.0 - 1e-12) return kSigmaMax;
  double lo = 0.0, hi = kSigmaMax;
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (j_function(mid) < mutual_info) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LlrFrame generate_apriori(const BitFrame& bits, double target_mi, Rng& rng) {
  if (target_mi < 0.0 || target_mi > 1.0) {
    throw std::invalid_argument("mutual information target must lie in [0, 1]");
  }
  const double sigma = j_inverse(target_mi);
  const double mean = 0.5 * sigma * sigma;
  LlrFrame llrs(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double centered = bits[i] ? mean : -mean;
    llrs[i] = clamp_llr(centered + sigma * rng.normal());
  }
  return llrs;
}

double measure_mutual_information(const LlrFrame& llrs, const BitFrame& bits) {
  if (llrs.empty() || llrs.size() != bits.size()) {
    throw std::invalid_argument("need matching, non-empty llr and bit frames");
  }
  const double mean = accumulate_softplus(llrs, bits) / static_cast<double>(llrs.size());
  return std::clamp(1.0 - mean, 0.0, 1.0);
}

std::vector<ExitPoint> check_node_curve(SnrSpec snr_r, const ExitSettings& settings) {
  const auto grid = grid_points(settings.grid_step);
  const double noise_var = db_to_noise_variance(snr_r);
  const double llr_scale = snr_r.is_absent() ? 0.0 : -2.0 / noise_var;

  std::vector<ExitPoint> curve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Rng rng(derive_seed(derive_seed(settings.seed, 1), g));
    const std::size_t n = settings.samples_per_point;
    BitFrame x1 = random_bits(n, rng);
    BitFrame x2 = random_bits(n, rng);
    const LlrFrame companion = generate_apriori(x1, grid[g], rng);

    LlrFrame out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint8_t xr = x1[i] ^ x2[i];
      double l_obs = 0.0;
      if (!snr_r.is_absent()) {
        double y = xr ? -1.0 : 1.0;
        if (noise_var > 0.0) y += rng.normal(0.0, std::sqrt(noise_var));
        l_obs = noise_var > 0.0 ? clamp_llr(llr_scale * y)
                                : (y > 0.0 ? -kLlrMax : kLlrMax);
      }
      out[i] = clamp_llr(boxplus(l_obs, companion[i]));
    }
    curve[g] = {grid[g], measure_mutual_information(out, x2)};
  }
  return curve;
}

std::vector<ExitPoint> decoder_curve(SnrSpec snr_sd, const ExitSettings& settings) {
  const auto grid = grid_points(settings.grid_step);
  const Trellis trellis = build_trellis(GeneratorSpec::turbo_16state());
  const std::size_t section_count = settings.info_len + trellis.memory;
  const std::size_t bits_per_frame = 2 * section_count;
  const std::size_t frames =
      (settings.samples_per_point + bits_per_frame - 1) / bits_per_frame;

  std::vector<ExitPoint> curve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Rng rng(derive_seed(derive_seed(settings.seed, 2), g));
    double softplus_sum = 0.0;
    std::size_t samples = 0;
    for (std::size_t f = 0; f < frames; ++f) {
      const BitFrame info = random_bits(settings.info_len, rng);
      const CodewordFrame cw = encode(info, trellis);
      BitFrame code_bits = cw.systematic;
      code_bits.insert(code_bits.end(), cw.parity.begin(), cw.parity.end());

      const ObservationFrame obs =
          transmit(bpsk_modulate(code_bits), {snr_sd, LinkId::source1_dest}, rng);
      const CodeLlr ch = unflatten(channel_llr(obs));
      const CodeLlr apr = unflatten(generate_apriori(code_bits, grid[g], rng));

      const BcjrResult r = bcjr_decode(ch, apr, trellis, settings.info_len);
      softplus_sum += accumulate_softplus(flatten(r.code_extrinsic), code_bits);
      samples += bits_per_frame;
    }
    const double mi = std::clamp(1.0 - softplus_sum / static_cast<double>(samples), 0.0, 1.0);
    curve[g] = {grid[g], mi};
  }
  return curve;
}

Trajectory simulate_trajectory(const TrajectorySettings& settings) {
  ExitSettings es;
  es.info_len = settings.info_len;
  es.samples_per_point = settings.samples_per_point;
  es.seed = settings.seed;
  const auto cn = check_node_curve(settings.snr_r, es);
  const auto dec = decoder_curve(settings.snr_sd, es);

  Trajectory traj;
  double mi = 0.0;
  bool decoder_turn = true;  // the first decoder pass runs with zero a-priori
  for (int s = 0; s < settings.max_steps; ++s) {
    mi = decoder_turn ? interpolate(dec, mi) : interpolate(cn, mi);
    traj.predicted.push_back(mi);
    decoder_turn = !decoder_turn;
  }

  const Trellis trellis = build_trellis(GeneratorSpec::turbo_16state());
  const std::size_t section_count = settings.info_len + trellis.memory;
  const std::size_t bits_per_frame = 2 * section_count;
  const std::size_t frames =
      (settings.samples_per_point + bits_per_frame - 1) / bits_per_frame;
  const int iterations = (settings.max_steps + 1) / 2;

  std::vector<double> softplus_sums(iterations, 0.0);
  const std::uint64_t traj_seed = derive_seed(settings.seed, 3);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::uint64_t frame_seed = derive_seed(traj_seed, f);
    Rng rng_bits(derive_seed(frame_seed, 1));
    Rng rng_ch(derive_seed(frame_seed, 2));
    const Permutation perm(derive_seed(frame_seed, 3), bits_per_frame);

    const BitFrame u1 = random_bits(settings.info_len, rng_bits);
    const BitFrame u2 = random_bits(settings.info_len, rng_bits);
    const CodewordFrame cw1 = encode(u1, trellis);
    const CodewordFrame cw2 = encode(u2, trellis);
    BitFrame b1 = cw1.systematic;
    b1.insert(b1.end(), cw1.parity.begin(), cw1.parity.end());
    BitFrame b2 = cw2.systematic;
    b2.insert(b2.end(), cw2.parity.begin(), cw2.parity.end());

    const ObservationFrame obs1 =
        transmit(bpsk_modulate(b1), {settings.snr_sd, LinkId::source1_dest}, rng_ch);
    const ObservationFrame obs2 =
        transmit(bpsk_modulate(b2), {settings.snr_sd, LinkId::source2_dest}, rng_ch);
    const CodeLlr ch1 = unflatten(channel_llr(obs1));
    const CodeLlr ch2 = unflatten(channel_llr(obs2));

    BitFrame xr(bits_per_frame);
    for (std::size_t k = 0; k < bits_per_frame; ++k) {
      xr[k] = b1[k] ^ b2[perm.mapping()[k]];
    }
    const ObservationFrame obs_r =
        transmit(bpsk_modulate(xr), {settings.snr_r, LinkId::relay_dest}, rng_ch);
    const LlrFrame l_r_obs = channel_llr(obs_r);

    CodeLlr apriori1 = CodeLlr::zeros(section_count);
    for (int t = 0; t < iterations; ++t) {
      const BcjrResult r1 = bcjr_decode(ch1, apriori1, trellis, settings.info_len);
      const LlrFrame apr2 = check_node_toward_2(l_r_obs, flatten(r1.code_extrinsic), perm);
      const BcjrResult r2 = bcjr_decode(ch2, unflatten(apr2), trellis, settings.info_len);
      apriori1 = unflatten(check_node_toward_1(l_r_obs, flatten(r2.code_extrinsic), perm));

      softplus_sums[t] += accumulate_softplus(flatten(r1.code_extrinsic), b1) +
                          accumulate_softplus(flatten(r2.code_extrinsic), b2);
    }
  }

  const double total = static_cast<double>(2 * frames * bits_per_frame);
  traj.measured.resize(iterations);
  for (int t = 0; t < iterations; ++t) {
    traj.measured[t] = std::clamp(1.0 - softplus_sums[t] / total, 0.0, 1.0);
  }
  return traj;
}

}  // namespace softnc
