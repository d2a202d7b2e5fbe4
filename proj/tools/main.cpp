#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "softnc/bcjr.hpp"
#include "softnc/channel.hpp"
#include "softnc/errors.hpp"
#include "softnc/exit_chart.hpp"
#include "softnc/harness.hpp"
#include "softnc/permutation.hpp"
#include "softnc/reference.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string snr_sd = "-8:1:0";
  std::string snr_rd = "10,-inf";
  double snr_sr = 5.0;
  std::size_t frames = 20000;
  int iters = 10;
  std::string mode = "scaled";
  std::string out;
  int workers = 1;
  std::size_t frame_length = 1024;
  std::size_t min_events = 100;
  std::size_t samples = 200000;
  double grid_step = 0.05;
  int steps = 20;
};

using OptionMap = std::map<std::string, CLI::Option*>;

void add_common_options(CLI::App* cmd, CliOptions& opt, OptionMap& byname) {
  byname["config"] = cmd->add_option("--config", opt.config_path, "key=value config file");
  byname["seed"] = cmd->add_option("--seed", opt.seed, "master RNG seed");
  byname["snr_sd"] =
      cmd->add_option("--snr-sd", opt.snr_sd, "direct-link SNR dB list or start:step:stop");
  byname["snr_rd"] = cmd->add_option("--snr-rd", opt.snr_rd,
                                     "relay-link SNR dB list; -inf disables the relay");
  byname["snr_sr"] = cmd->add_option("--snr-sr", opt.snr_sr, "source-to-relay SNR dB");
  byname["frames"] = cmd->add_option("--frames", opt.frames, "frame cap per point");
  byname["iters"] = cmd->add_option("--iters", opt.iters, "decoder iteration cap");
  byname["mode"] = cmd->add_option("--mode", opt.mode, "relay LLR handling: raw or scaled");
  byname["out"] = cmd->add_option("--out", opt.out, "output CSV path (default stdout)");
  byname["workers"] = cmd->add_option("--workers", opt.workers, "worker thread count");
  byname["frame_length"] =
      cmd->add_option("--frame-length", opt.frame_length, "info bits per frame");
  byname["min_events"] =
      cmd->add_option("--min-events", opt.min_events, "error events needed per BER point");
  byname["samples"] =
      cmd->add_option("--samples", opt.samples, "samples per transfer-curve point");
  byname["grid_step"] = cmd->add_option("--grid-step", opt.grid_step, "transfer-curve grid step");
  byname["steps"] = cmd->add_option("--steps", opt.steps, "trajectory staircase steps");
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw softnc::ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw softnc::ConfigError("config line " + std::to_string(lineno) + " has no '='");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw softnc::ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    }
    kv[key] = value;
  }
  return kv;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw softnc::ConfigError("config key '" + key + "' needs an unsigned integer");
  }
}

long long to_i64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw softnc::ConfigError("config key '" + key + "' needs an integer");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw softnc::ConfigError("config key '" + key + "' needs a number");
  }
}

// CLI flags win over config-file keys, which win over built-in defaults.
void apply_config(const std::map<std::string, std::string>& kv, CliOptions& opt,
                  const OptionMap& byname) {
  auto overridden = [&](const std::string& name) {
    const auto it = byname.find(name);
    return it != byname.end() && it->second->count() > 0;
  };
  for (const auto& [key, value] : kv) {
    if (key == "seed") {
      if (!overridden("seed")) opt.seed = to_u64(key, value);
    } else if (key == "snr_sd") {
      if (!overridden("snr_sd")) opt.snr_sd = value;
    } else if (key == "snr_rd") {
      if (!overridden("snr_rd")) opt.snr_rd = value;
    } else if (key == "snr_sr") {
      if (!overridden("snr_sr")) opt.snr_sr = to_double(key, value);
    } else if (key == "max_frames") {
      if (!overridden("frames")) opt.frames = to_u64(key, value);
    } else if (key == "iters") {
      if (!overridden("iters")) opt.iters = static_cast<int>(to_i64(key, value));
    } else if (key == "mode") {
      if (!overridden("mode")) opt.mode = value;
    } else if (key == "out") {
      if (!overridden("out")) opt.out = value;
    } else if (key == "workers") {
      if (!overridden("workers")) opt.workers = static_cast<int>(to_i64(key, value));
    } else if (key == "frame_length") {
      if (!overridden("frame_length")) opt.frame_length = to_u64(key, value);
    } else if (key == "min_error_events") {
      if (!overridden("min_events")) opt.min_events = to_u64(key, value);
    } else if (key == "samples") {
      if (!overridden("samples")) opt.samples = to_u64(key, value);
    } else if (key == "grid_step") {
      if (!overridden("grid_step")) opt.grid_step = to_double(key, value);
    } else if (key == "steps") {
      if (!overridden("steps")) opt.steps = static_cast<int>(to_i64(key, value));
    } else {
      throw softnc::ConfigError("unknown config key '" + key + "'");
    }
  }
}

softnc::RelayLlrMode parse_mode(const std::string& mode) {
  if (mode == "raw") return softnc::RelayLlrMode::raw;
  if (mode == "scaled") return softnc::RelayLlrMode::scaled;
  throw softnc::ConfigError("mode must be 'raw' or 'scaled', got '" + mode + "'");
}

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw softnc::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string format_mi(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int run_ber(const CliOptions& opt) {
  softnc::ExperimentConfig config;
  config.info_len = opt.frame_length;
  config.snr_sr_db = opt.snr_sr;
  config.snr_sd_grid = softnc::parse_snr_list(opt.snr_sd);
  config.snr_rd_list = softnc::parse_snr_list(opt.snr_rd);
  config.max_iterations = opt.iters;
  config.relay_mode = parse_mode(opt.mode);
  config.seed = opt.seed;
  config.min_error_events = opt.min_events;
  config.max_frames = opt.frames;
  config.workers = opt.workers;

  const auto records = softnc::run_ber_sweep(config);
  OutputStream out(opt.out);
  softnc::write_ber_csv(out.get(), records, config.max_iterations, config.relay_mode);
  return 0;
}

int run_exit_curves(const CliOptions& opt) {
  softnc::ExitSettings settings;
  settings.info_len = opt.frame_length;
  settings.samples_per_point = opt.samples;
  settings.grid_step = opt.grid_step;
  settings.seed = opt.seed;

  OutputStream out(opt.out);
  out.get() << "curve,snr_db,input_mi,output_mi\n";
  for (softnc::SnrSpec snr : softnc::parse_snr_list(opt.snr_rd)) {
    for (const auto& p : softnc::check_node_curve(snr, settings)) {
      out.get() << "check_node," << softnc::format_snr(snr) << ',' << format_mi(p.input_mi)
                << ',' << format_mi(p.output_mi) << '\n';
    }
  }
  for (softnc::SnrSpec snr : softnc::parse_snr_list(opt.snr_sd)) {
    for (const auto& p : softnc::decoder_curve(snr, settings)) {
      out.get() << "decoder," << softnc::format_snr(snr) << ',' << format_mi(p.input_mi)
                << ',' << format_mi(p.output_mi) << '\n';
    }
  }
  return 0;
}

int run_trajectory(const CliOptions& opt) {
  const auto sd_list = softnc::parse_snr_list(opt.snr_sd);
  const auto rd_list = softnc::parse_snr_list(opt.snr_rd);
  if (sd_list.size() != 1 || rd_list.size() != 1) {
    throw softnc::ConfigError("trajectory needs exactly one --snr-sd and one --snr-rd value");
  }
  softnc::TrajectorySettings settings;
  settings.snr_sd = sd_list.front();
  settings.snr_r = rd_list.front();
  settings.max_steps = opt.steps;
  settings.info_len = opt.frame_length;
  settings.samples_per_point = opt.samples;
  settings.seed = opt.seed;

  const softnc::Trajectory traj = softnc::simulate_trajectory(settings);
  OutputStream out(opt.out);
  out.get() << "kind,index,mi\n";
  for (std::size_t i = 0; i < traj.predicted.size(); ++i) {
    out.get() << "predicted," << (i + 1) << ',' << format_mi(traj.predicted[i]) << '\n';
  }
  for (std::size_t i = 0; i < traj.measured.size(); ++i) {
    out.get() << "measured," << (i + 1) << ',' << format_mi(traj.measured[i]) << '\n';
  }
  return 0;
}

int run_selftest(const CliOptions& opt) {
  using namespace softnc;
  bool ok = true;
  auto report = [&](const std::string& name, double err, double tol) {
    const bool pass = err <= tol;
    ok = ok && pass;
    std::cout << (pass ? "ok   " : "FAIL ") << name << " (max err " << err << ", tol " << tol
              << ")\n";
  };

  {
    Rng rng(derive_seed(opt.seed, 101));
    double max_err = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double l1 = (rng.uniform01() - 0.5) * 40.0;
      const double l2 = (rng.uniform01() - 0.5) * 40.0;
      max_err = std::max(max_err, std::abs(boxplus(l1, l2) - reference::boxplus_prob(l1, l2)));
    }
    report("boxplus vs probability-domain", max_err, 1e-9);
  }

  {
    Rng rng(derive_seed(opt.seed, 102));
    const GeneratorSpec spec = GeneratorSpec::turbo_16state();
    const Trellis trellis = build_trellis(spec);
    double mismatches = 0.0;
    for (int f = 0; f < 200; ++f) {
      const BitFrame info = random_bits(64, rng);
      const CodewordFrame fast = encode(info, trellis);
      const CodewordFrame slow = reference::encode_shift_register(info, spec);
      if (fast.systematic != slow.systematic || fast.parity != slow.parity) mismatches += 1.0;
    }
    report("trellis encoder vs shift-register encoder", mismatches, 0.0);
  }

  {
    Rng rng(derive_seed(opt.seed, 103));
    const GeneratorSpec spec = GeneratorSpec::turbo_16state();
    const Trellis trellis = build_trellis(spec);
    double max_err = 0.0;
    for (int f = 0; f < 10; ++f) {
      const BitFrame info = random_bits(8, rng);
      const CodewordFrame cw = encode(info, trellis);
      BitFrame code_bits = cw.systematic;
      code_bits.insert(code_bits.end(), cw.parity.begin(), cw.parity.end());
      const ObservationFrame obs =
          transmit(bpsk_modulate(code_bits), {{0.0}, LinkId::source1_dest}, rng);
      const CodeLlr ch = unflatten(channel_llr(obs));
      const CodeLlr zero = CodeLlr::zeros(ch.sys.size());
      const BcjrResult r = bcjr_decode(ch, zero, trellis, 8);
      const LlrFrame oracle = reference::map_posteriors_exhaustive(ch, zero, spec, 8);
      for (std::size_t k = 0; k < oracle.size(); ++k) {
        max_err = std::max(max_err, std::abs(oracle[k] - r.info_posterior[k]));
      }
    }
    report("forward-backward vs exhaustive enumeration", max_err, 1e-9);
  }

  {
    double max_err = 0.0;
    for (double sigma : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      max_err = std::max(
          max_err, std::abs(j_function(sigma) - reference::gaussian_llr_mutual_info(sigma)));
    }
    report("j_function vs quadrature", max_err, 1e-6);
  }

  {
    Rng rng(derive_seed(opt.seed, 104));
    const Permutation perm(derive_seed(opt.seed, 105), 512);
    LlrFrame v(512);
    for (double& x : v) x = rng.normal();
    const LlrFrame round = perm.invert(perm.apply(v));
    double max_err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      max_err = std::max(max_err, std::abs(v[i] - round[i]));
    }
    report("permutation apply/invert roundtrip", max_err, 0.0);
  }

  if (!ok) {
    std::cerr << "selftest failed\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soft network-coded relay simulator"};
  app.require_subcommand(1);

  CliOptions opt;
  OptionMap ber_opts, exit_opts, traj_opts, self_opts;
  CLI::App* ber = app.add_subcommand("ber", "Monte Carlo BER sweep");
  CLI::App* exit_curves = app.add_subcommand("exit-curves", "transfer curves as CSV");
  CLI::App* trajectory = app.add_subcommand("trajectory", "predicted and measured trajectory");
  CLI::App* selftest = app.add_subcommand("selftest", "cross-check against slow references");
  add_common_options(ber, opt, ber_opts);
  add_common_options(exit_curves, opt, exit_opts);
  add_common_options(trajectory, opt, traj_opts);
  add_common_options(selftest, opt, self_opts);

  try {
    app.parse(argc, argv);

    OptionMap* active = nullptr;
    if (ber->parsed()) active = &ber_opts;
    if (exit_curves->parsed()) active = &exit_opts;
    if (trajectory->parsed()) active = &traj_opts;
    if (selftest->parsed()) active = &self_opts;
    if (active == nullptr) throw softnc::ConfigError("no subcommand selected");

    if (trajectory->parsed()) {
      // a single operating point, not a sweep
      if ((*active)["snr_sd"]->count() == 0) opt.snr_sd = "-5";
      if ((*active)["snr_rd"]->count() == 0) opt.snr_rd = "1";
    }
    if (!opt.config_path.empty()) {
      apply_config(load_config_file(opt.config_path), opt, *active);
    }

    if (ber->parsed()) return run_ber(opt);
    if (exit_curves->parsed()) return run_exit_curves(opt);
    if (trajectory->parsed()) return run_trajectory(opt);
    return run_selftest(opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const softnc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
