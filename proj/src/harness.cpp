#include "softnc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "softnc/errors.hpp"
#include "softnc/parallel.hpp"
#include "softnc/relay.hpp"

namespace softnc {

void ExperimentConfig::validate() const {
  if (info_len < 1 || info_len > 1000000) {
    throw ConfigError("frame length must be in [1, 1000000]");
  }
  if (min_error_events < 50) {
    throw ConfigError("min_error_events below 50 gives statistically meaningless BER");
  }
  if (max_frames < 1) throw ConfigError("max_frames must be positive");
  if (max_iterations < 1) throw ConfigError("need at least one decoder iteration");
  if (workers < 1 || workers > 256) throw ConfigError("workers must be in [1, 256]");
}

FrameOutcome simulate_frame(std::uint64_t frame_seed, std::size_t info_len, SnrSpec snr_sr,
                            SnrSpec snr_sd, SnrSpec snr_rd, const DecoderConfig& decoder,
                            const Trellis& trellis) {
  // Independent streams per random source, so the same frame index sees the
  // same bits and noise at every grid point.
  Rng rng_u1(derive_seed(frame_seed, 1));
  Rng rng_u2(derive_seed(frame_seed, 2));
  Rng rng_sd1(derive_seed(frame_seed, 3));
  Rng rng_sd2(derive_seed(frame_seed, 4));
  Rng rng_sr1(derive_seed(frame_seed, 5));
  Rng rng_sr2(derive_seed(frame_seed, 6));
  Rng rng_rd(derive_seed(frame_seed, 7));
  const std::uint64_t perm_seed = derive_seed(frame_seed, 8);

  const std::size_t section_count = info_len + static_cast<std::size_t>(trellis.memory);
  const Permutation perm(perm_seed, 2 * section_count);

  const BitFrame u1 = random_bits(info_len, rng_u1);
  const BitFrame u2 = random_bits(info_len, rng_u2);
  const CodewordFrame cw1 = encode(u1, trellis);
  const CodewordFrame cw2 = encode(u2, trellis);
  BitFrame b1 = cw1.systematic;
  b1.insert(b1.end(), cw1.parity.begin(), cw1.parity.end());
  BitFrame b2 = cw2.systematic;
  b2.insert(b2.end(), cw2.parity.begin(), cw2.parity.end());
  const std::vector<double> sym1 = bpsk_modulate(b1);
  const std::vector<double> sym2 = bpsk_modulate(b2);

  const LlrFrame llr_sd1 =
      channel_llr(transmit(sym1, {snr_sd, LinkId::source1_dest}, rng_sd1));
  const LlrFrame llr_sd2 =
      channel_llr(transmit(sym2, {snr_sd, LinkId::source2_dest}, rng_sd2));

  LlrFrame l_r_obs(2 * section_count, 0.0);
  if (!snr_rd.is_absent()) {
    const LlrFrame llr_sr1 =
        channel_llr(transmit(sym1, {snr_sr, LinkId::source1_relay}, rng_sr1));
    const LlrFrame llr_sr2 =
        channel_llr(transmit(sym2, {snr_sr, LinkId::source2_relay}, rng_sr2));
    const RelayFrame relay = relay_process(llr_sr1, llr_sr2, trellis, perm, info_len);
    const ObservationFrame obs_rd =
        transmit(relay.values, {snr_rd, LinkId::relay_dest}, rng_rd);
    l_r_obs = relay_observation_llr(obs_rd, relay.power_scale, decoder.relay_mode);
  }

  const DecodeResult result =
      joint_decode(llr_sd1, llr_sd2, l_r_obs, trellis, perm, info_len, decoder);

  FrameOutcome outcome;
  outcome.bit_errors =
      hamming_distance(result.decisions1, u1) + hamming_distance(result.decisions2, u2);
  outcome.iterations_used = result.iterations_used;
  return outcome;
}

namespace {

constexpr std::size_t kBatchSize = 32;

BerRecord run_point(const ExperimentConfig& config, SnrSpec snr_sd, SnrSpec snr_rd,
                    const Trellis& trellis) {
  DecoderConfig decoder;
  decoder.max_iterations = config.max_iterations;
  decoder.early_stop = true;
  decoder.relay_mode = config.relay_mode;

  std::size_t frames = 0, bit_errors = 0, error_events = 0;
  long long iteration_sum = 0;
  std::vector<FrameOutcome> slots(kBatchSize);

  // The stop rule is only consulted between batches; inside a batch the
  // frame count is fixed, so worker scheduling cannot change the result.
  while (frames < config.max_frames && error_events < config.min_error_events) {
    const std::size_t batch = std::min(kBatchSize, config.max_frames - frames);
    parallel_for(batch, config.workers, [&](std::size_t i) {
      const std::uint64_t frame_seed = derive_seed(config.seed, frames + i);
      slots[i] = simulate_frame(frame_seed, config.info_len, {config.snr_sr_db}, snr_sd,
                                snr_rd, decoder, trellis);
    });
    for (std::size_t i = 0; i < batch; ++i) {
      bit_errors += slots[i].bit_errors;
      if (slots[i].bit_errors > 0) ++error_events;
      iteration_sum += slots[i].iterations_used;
    }
    frames += batch;
  }

  BerRecord rec;
  rec.snr_sr_db = config.snr_sr_db;
  rec.snr_sd = snr_sd;
  rec.snr_rd = snr_rd;
  rec.frames = frames;
  rec.info_bits = frames * 2 * config.info_len;
  rec.bit_errors = bit_errors;
  rec.error_events = error_events;
  rec.ber = rec.info_bits ? static_cast<double>(bit_errors) / rec.info_bits : 0.0;
  rec.ber_stderr =
      rec.info_bits ? std::sqrt(rec.ber * (1.0 - rec.ber) / rec.info_bits) : 0.0;
  rec.mean_iterations = frames ? static_cast<double>(iteration_sum) / frames : 0.0;
  return rec;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& config) {
  config.validate();
  const Trellis trellis = build_trellis(GeneratorSpec::turbo_16state());
  std::vector<BerRecord> records;
  records.reserve(config.snr_rd_list.size() * config.snr_sd_grid.size());
  for (SnrSpec snr_rd : config.snr_rd_list) {
    for (SnrSpec snr_sd : config.snr_sd_grid) {
      records.push_back(run_point(config, snr_sd, snr_rd, trellis));
    }
  }
  return records;
}

std::string format_snr(SnrSpec snr) {
  if (snr.is_absent()) return "-inf";
  return format_double(snr.value_db);
}

void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records, int iters,
                   RelayLlrMode mode) {
  out << "snr_sr_db,snr_sd_db,snr_rd_db,mode,iters,frames,info_bits,bit_errors,ber,"
         "ber_stderr,mean_iterations\n";
  const char* mode_name = mode == RelayLlrMode::raw ? "raw" : "scaled";
  for (const BerRecord& r : records) {
    out << format_double(r.snr_sr_db) << ',' << format_snr(r.snr_sd) << ','
        << format_snr(r.snr_rd) << ',' << mode_name << ',' << iters << ',' << r.frames << ','
        << r.info_bits << ',' << r.bit_errors << ',' << format_double(r.ber) << ','
        << format_double(r.ber_stderr) << ',' << format_double(r.mean_iterations) << '\n';
  }
}

namespace {

SnrSpec parse_snr_token(std::string token) {
  token.erase(std::remove_if(token.begin(), token.end(),
                             [](unsigned char c) { return c == ' ' || c == '\t'; }),
              token.end());
  if (token.empty()) throw ConfigError("empty SNR value");
  if (token == "-inf" || token == "-INF" || token == "-Inf") return SnrSpec::absent();
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw ConfigError("cannot parse SNR value '" + token + "'");
  }
  if (std::isinf(v)) {
    if (v < 0.0) return SnrSpec::absent();
    throw ConfigError("+inf dB is not a usable SNR");
  }
  if (std::isnan(v)) throw ConfigError("SNR value is NaN");
  return {v};
}

}  // namespace

std::vector<SnrSpec> parse_snr_list(const std::string& text) {
  std::vector<SnrSpec> values;
  if (text.empty()) return values;

  if (text.find(':') != std::string::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
      throw ConfigError("SNR range must look like start:step:stop");
    }
    const SnrSpec start = parse_snr_token(text.substr(0, first));
    const SnrSpec step = parse_snr_token(text.substr(first + 1, second - first - 1));
    const SnrSpec stop = parse_snr_token(text.substr(second + 1));
    if (start.is_absent() || step.is_absent() || stop.is_absent()) {
      throw ConfigError("SNR range endpoints must be finite");
    }
    if (step.value_db <= 0.0) throw ConfigError("SNR range step must be positive");
    if (stop.value_db < start.value_db) throw ConfigError("SNR range stop is before start");
    const long count =
        std::lround(std::floor((stop.value_db - start.value_db) / step.value_db + 1e-9)) + 1;
    values.reserve(count);
    for (long i = 0; i < count; ++i) {
      values.push_back({start.value_db + i * step.value_db});
    }
    return values;
  }

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    values.push_back(parse_snr_token(text.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

}  // namespace softnc
