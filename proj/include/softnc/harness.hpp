#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "softnc/destination.hpp"
#include "softnc/llr.hpp"

namespace softnc {

struct ExperimentConfig {
  std::size_t info_len = 1024;
  double snr_sr_db = 5.0;
  std::vector<SnrSpec> snr_sd_grid;
  std::vector<SnrSpec> snr_rd_list;
  int max_iterations = 10;
  RelayLlrMode relay_mode = RelayLlrMode::scaled;
  std::uint64_t seed = 1;
  std::size_t min_error_events = 100;  // stop once a point has seen this many bad frames
  std::size_t max_frames = 20000;      // hard cap per point
  int workers = 1;

  void validate() const;  // throws ConfigError with a specific message
};

struct BerRecord {
  double snr_sr_db = 0.0;
  SnrSpec snr_sd;
  SnrSpec snr_rd;
  std::size_t frames = 0;
  std::size_t info_bits = 0;
  std::size_t bit_errors = 0;
  std::size_t error_events = 0;  // frames with at least one info-bit error
  double ber = 0.0;
  double ber_stderr = 0.0;
  double mean_iterations = 0.0;
};

// One simulated frame end to end: two sources encode, relay combines, the
// destination decodes jointly. All randomness is split from frame_seed, so
// the same frame index gives the same bits and noise at every grid point.
struct FrameOutcome {
  std::size_t bit_errors = 0;
  int iterations_used = 0;
};

FrameOutcome simulate_frame(std::uint64_t frame_seed, std::size_t info_len, SnrSpec snr_sr,
                            SnrSpec snr_sd, SnrSpec snr_rd, const DecoderConfig& decoder,
                            const Trellis& trellis);

// Monte Carlo sweep over snr_rd_list x snr_sd_grid. Frames run in fixed-size
// batches; the stop rule is evaluated only at batch boundaries, so results do
// not depend on the worker count.
std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& config);

void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records, int iters,
                   RelayLlrMode mode);

// "-5:1:0" -> {-5,-4,-3,-2,-1,0}; "1,2,-inf" -> the listed values.
std::vector<SnrSpec> parse_snr_list(const std::string& text);

std::string format_snr(SnrSpec snr);

}  // namespace softnc
