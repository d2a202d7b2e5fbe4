#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "softnc/channel.hpp"
#include "softnc/destination.hpp"
#include "softnc/rng.hpp"

using namespace softnc;

namespace {

struct TwoSourceScene {
  BitFrame u1, u2, b1, b2;
  LlrFrame llr_sd1, llr_sd2;
  LlrFrame l_r_exact;  // true network-coded llrs at full confidence
  Permutation perm;
  Trellis trellis;
  std::size_t K;

  TwoSourceScene(std::size_t info_len, SnrSpec snr_sd1, SnrSpec snr_sd2, std::uint64_t seed)
      : perm(derive_seed(seed, 8), 2 * (info_len + 4)),
        trellis(build_trellis(GeneratorSpec::turbo_16state())),
        K(info_len) {
    Rng rng(seed);
    u1 = random_bits(K, rng);
    u2 = random_bits(K, rng);
    const CodewordFrame cw1 = encode(u1, trellis);
    const CodewordFrame cw2 = encode(u2, trellis);
    b1 = cw1.systematic;
    b1.insert(b1.end(), cw1.parity.begin(), cw1.parity.end());
    b2 = cw2.systematic;
    b2.insert(b2.end(), cw2.parity.begin(), cw2.parity.end());
    llr_sd1 = channel_llr(transmit(bpsk_modulate(b1), {snr_sd1, LinkId::source1_dest}, rng));
    llr_sd2 = channel_llr(transmit(bpsk_modulate(b2), {snr_sd2, LinkId::source2_dest}, rng));
    l_r_exact.resize(b1.size());
    for (std::size_t k = 0; k < b1.size(); ++k) {
      const std::uint8_t xr = b1[k] ^ b2[perm.mapping()[k]];
      l_r_exact[k] = xr ? kLlrMax : -kLlrMax;
    }
  }
};

}  // namespace

TEST_SUITE("destination") {

TEST_CASE("relay observation llr undoes the power scaling") {
  ObservationFrame obs;
  obs.noise_variance = 0.25;
  obs.samples = {2.0, -4.0, 50.0};
  const LlrFrame raw = relay_observation_llr(obs, 3.0, RelayLlrMode::raw);
  CHECK(raw[0] == doctest::Approx(6.0));
  CHECK(raw[1] == doctest::Approx(-12.0));
  CHECK(raw[2] == kLlrMax);

  const LlrFrame scaled = relay_observation_llr(obs, 3.0, RelayLlrMode::scaled);
  CHECK(scaled[0] == doctest::Approx(6.0 / 1.25));
  CHECK(scaled[1] == doctest::Approx(-12.0 / 1.25));

  obs.absent = true;
  CHECK(relay_observation_llr(obs, 3.0, RelayLlrMode::raw) == LlrFrame(3, 0.0));
  obs.absent = false;
  CHECK_THROWS_AS(relay_observation_llr(obs, 0.0, RelayLlrMode::raw), std::invalid_argument);
}

TEST_CASE("check node with a silent relay passes nothing") {
  const Permutation perm(3, 16);
  const LlrFrame zeros(16, 0.0);
  LlrFrame extrinsic(16);
  Rng rng(4);
  for (double& x : extrinsic) x = 5.0 * rng.normal();
  CHECK(check_node_toward_2(zeros, extrinsic, perm) == LlrFrame(16, 0.0));
  CHECK(check_node_toward_1(zeros, extrinsic, perm) == LlrFrame(16, 0.0));
}

TEST_CASE("check node routes through the permutation correctly") {
  Rng rng(444);
  const Permutation perm(99, 32);
  LlrFrame l_r(32), e1(32), e2(32);
  for (std::size_t k = 0; k < 32; ++k) {
    l_r[k] = 4.0 * rng.normal();
    e1[k] = 4.0 * rng.normal();
    e2[k] = 4.0 * rng.normal();
  }
  const LlrFrame to2 = check_node_toward_2(l_r, e1, perm);
  const LlrFrame to1 = check_node_toward_1(l_r, e2, perm);
  for (std::size_t k = 0; k < 32; ++k) {
    CHECK(to2[perm.mapping()[k]] == doctest::Approx(boxplus(l_r[k], e1[k])).epsilon(1e-12));
    CHECK(to1[k] ==
          doctest::Approx(boxplus(l_r[k], e2[perm.mapping()[k]])).epsilon(1e-12));
  }
}

TEST_CASE("silent relay reduces the joint decoder to independent decoding") {
  const TwoSourceScene scene(96, {0.5}, {0.5}, 71);
  DecoderConfig config;
  config.max_iterations = 10;

  const LlrFrame no_relay(scene.b1.size(), 0.0);
  const DecodeResult joint = joint_decode(scene.llr_sd1, scene.llr_sd2, no_relay,
                                          scene.trellis, scene.perm, scene.K, config);

  const std::size_t n = scene.K + 4;
  const BcjrResult solo1 =
      bcjr_decode(unflatten(scene.llr_sd1), CodeLlr::zeros(n), scene.trellis, scene.K);
  const BcjrResult solo2 =
      bcjr_decode(unflatten(scene.llr_sd2), CodeLlr::zeros(n), scene.trellis, scene.K);

  for (std::size_t k = 0; k < scene.K; ++k) {
    CHECK(joint.posterior1[k] == doctest::Approx(solo1.info_posterior[k]).epsilon(1e-12));
    CHECK(joint.posterior2[k] == doctest::Approx(solo2.info_posterior[k]).epsilon(1e-12));
  }
  // nothing couples the decoders, so decisions settle immediately
  CHECK(joint.iterations_used == 2);
  CHECK(joint.converged);
}

TEST_CASE("good channels decode both sources") {
  const TwoSourceScene scene(128, {4.0}, {4.0}, 72);
  DecoderConfig config;
  const DecodeResult result = joint_decode(scene.llr_sd1, scene.llr_sd2, scene.l_r_exact,
                                           scene.trellis, scene.perm, scene.K, config);
  CHECK(result.decisions1 == scene.u1);
  CHECK(result.decisions2 == scene.u2);
  CHECK(result.converged);
}

TEST_CASE("a perfect relay carries a source with no direct link") {
  // source 2 has no direct path; its bits must arrive purely through the
  // network-coded constraint and decoder 1's extrinsic
  const TwoSourceScene scene(128, {6.0}, SnrSpec::absent(), 73);
  DecoderConfig config;
  config.max_iterations = 10;
  const DecodeResult result = joint_decode(scene.llr_sd1, scene.llr_sd2, scene.l_r_exact,
                                           scene.trellis, scene.perm, scene.K, config);
  CHECK(result.decisions1 == scene.u1);
  CHECK(result.decisions2 == scene.u2);
}

TEST_CASE("early stop off runs to the iteration cap") {
  const TwoSourceScene scene(64, {2.0}, {2.0}, 74);
  DecoderConfig config;
  config.max_iterations = 6;
  config.early_stop = false;
  const DecodeResult result = joint_decode(scene.llr_sd1, scene.llr_sd2, scene.l_r_exact,
                                           scene.trellis, scene.perm, scene.K, config);
  CHECK(result.iterations_used == 6);
}

TEST_CASE("joint decoder validates its inputs") {
  const TwoSourceScene scene(16, {0.0}, {0.0}, 75);
  DecoderConfig config;
  CHECK_THROWS_AS(joint_decode(LlrFrame(10, 0.0), scene.llr_sd2, scene.l_r_exact,
                               scene.trellis, scene.perm, scene.K, config),
                  std::invalid_argument);
  config.max_iterations = 0;
  CHECK_THROWS_AS(joint_decode(scene.llr_sd1, scene.llr_sd2, scene.l_r_exact, scene.trellis,
                               scene.perm, scene.K, config),
                  std::invalid_argument);
}

}  // TEST_SUITE
