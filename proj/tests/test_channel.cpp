#include <cmath>

#include "doctest.h"
#include "softnc/channel.hpp"

using namespace softnc;

TEST_SUITE("channel") {

TEST_CASE("bpsk maps 0 to +1 and 1 to -1") {
  const auto symbols = bpsk_modulate({0, 1, 1, 0});
  CHECK(symbols == std::vector<double>{1.0, -1.0, -1.0, 1.0});
}

TEST_CASE("noiseless link passes symbols through") {
  Rng rng(1);
  const std::vector<double> symbols = {1.0, -1.0, 1.0};
  // 300 dB leaves sub-epsilon noise
  const ObservationFrame obs = transmit(symbols, {{300.0}, LinkId::source1_dest}, rng);
  REQUIRE(obs.samples.size() == symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    CHECK(obs.samples[i] == doctest::Approx(symbols[i]).epsilon(1e-12));
  }
  CHECK_FALSE(obs.absent);
}

TEST_CASE("absent link yields a zero-information observation") {
  Rng rng(1);
  const ObservationFrame obs =
      transmit({1.0, -1.0}, {SnrSpec::absent(), LinkId::relay_dest}, rng);
  CHECK(obs.absent);
  const LlrFrame llrs = channel_llr(obs);
  CHECK(llrs == LlrFrame{0.0, 0.0});
}

TEST_CASE("channel llr sign and scale") {
  ObservationFrame obs;
  obs.noise_variance = 0.5;
  obs.samples = {1.0, -1.0, 0.25};
  const LlrFrame llrs = channel_llr(obs);
  // L = -2y/sigma^2: a positive sample argues for bit 0
  CHECK(llrs[0] == doctest::Approx(-4.0));
  CHECK(llrs[1] == doctest::Approx(4.0));
  CHECK(llrs[2] == doctest::Approx(-1.0));
}

TEST_CASE("extreme observations clamp instead of overflowing") {
  ObservationFrame obs;
  obs.noise_variance = 0.01;
  obs.samples = {5.0, -5.0};
  const LlrFrame llrs = channel_llr(obs);
  CHECK(llrs[0] == -kLlrMax);
  CHECK(llrs[1] == kLlrMax);

  ObservationFrame clean;
  clean.noise_variance = 0.0;
  clean.samples = {1.0, -1.0, 0.0};
  const LlrFrame saturated = channel_llr(clean);
  CHECK(saturated[0] == -kLlrMax);
  CHECK(saturated[1] == kLlrMax);
  CHECK(saturated[2] == 0.0);
}

TEST_CASE("awgn noise has the configured variance") {
  Rng rng(12345);
  const std::vector<double> symbols(100000, 1.0);
  const ObservationFrame obs = transmit(symbols, {{0.0}, LinkId::source1_dest}, rng);
  CHECK(obs.noise_variance == doctest::Approx(0.5));
  double sum = 0.0, sum2 = 0.0;
  for (double y : obs.samples) {
    sum += y - 1.0;
    sum2 += (y - 1.0) * (y - 1.0);
  }
  const double n = static_cast<double>(symbols.size());
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum2 / n == doctest::Approx(0.5).epsilon(0.03));
}

}  // TEST_SUITE
