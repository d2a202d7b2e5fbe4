#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "softnc/exit_chart.hpp"
#include "softnc/reference.hpp"

using namespace softnc;

TEST_SUITE("exit") {

TEST_CASE("j function endpoints and monotonicity") {
  CHECK(j_function(0.0) == 0.0);
  CHECK(j_function(-1.0) == 0.0);
  CHECK(j_function(100.0) == 1.0);
  double prev = 0.0;
  for (double sigma = 0.25; sigma <= 10.0; sigma += 0.25) {
    const double cur = j_function(sigma);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(prev < 1.0);
}

TEST_CASE("j inverse round trip") {
  for (double target : {0.05, 0.2, 0.5, 0.8, 0.95, 0.999}) {
    const double sigma = j_inverse(target);
    CHECK(j_function(sigma) == doctest::Approx(target).epsilon(1e-6));
  }
  CHECK(j_inverse(0.0) == 0.0);
  CHECK(j_inverse(1.0) > 50.0);
}

TEST_CASE("j function agrees with quadrature") {
  for (double sigma : {0.3, 1.0, 2.5, 5.0}) {
    CHECK(j_function(sigma) ==
          doctest::Approx(reference::gaussian_llr_mutual_info(sigma)).epsilon(1e-5));
  }
}

TEST_CASE("mutual information estimator on degenerate inputs") {
  const BitFrame bits = {0, 1, 0, 1};
  CHECK(measure_mutual_information(LlrFrame(4, 0.0), bits) == 0.0);
  // fully confident and correct
  const LlrFrame right = {-kLlrMax, kLlrMax, -kLlrMax, kLlrMax};
  CHECK(measure_mutual_information(right, bits) == doctest::Approx(1.0).epsilon(1e-9));
  // fully confident and wrong pins the estimate at the floor
  const LlrFrame wrong = {kLlrMax, -kLlrMax, kLlrMax, -kLlrMax};
  CHECK(measure_mutual_information(wrong, bits) == 0.0);
  CHECK_THROWS_AS(measure_mutual_information(LlrFrame{}, BitFrame{}), std::invalid_argument);
  CHECK_THROWS_AS(measure_mutual_information(LlrFrame(3, 0.0), bits), std::invalid_argument);
}

TEST_CASE("generated a-priori hits its mutual information target") {
  Rng rng(808);
  const BitFrame bits = random_bits(200000, rng);
  for (double target : {0.1, 0.5, 0.9}) {
    const LlrFrame llrs = generate_apriori(bits, target, rng);
    CHECK(measure_mutual_information(llrs, bits) == doctest::Approx(target).epsilon(0.02));
  }
  CHECK_THROWS_AS(generate_apriori(bits, 1.5, rng), std::invalid_argument);
}

TEST_CASE("check node curve shape at a moderate relay snr") {
  ExitSettings settings;
  settings.samples_per_point = 20000;
  settings.grid_step = 0.25;
  settings.seed = 5;
  const auto curve = check_node_curve({1.0}, settings);
  CHECK(curve.size() == 5);
  CHECK(curve.front().input_mi == 0.0);
  CHECK(curve.back().input_mi == 1.0);
  CHECK(curve.front().output_mi < 0.02);
  for (const auto& p : curve) CHECK(p.output_mi <= p.input_mi + 0.02);
  // more side information should never hurt
  CHECK(curve.back().output_mi > curve.front().output_mi);
}

TEST_CASE("check node curve collapses without a relay and opens up with a clean one") {
  ExitSettings settings;
  settings.samples_per_point = 20000;
  settings.grid_step = 0.25;
  settings.seed = 6;
  for (const auto& p : check_node_curve(SnrSpec::absent(), settings)) {
    CHECK(p.output_mi < 0.02);
  }
  for (const auto& p : check_node_curve({20.0}, settings)) {
    CHECK(std::abs(p.output_mi - p.input_mi) < 0.03);
  }
}

TEST_CASE("decoder curve rises with a-priori quality") {
  ExitSettings settings;
  settings.info_len = 256;
  settings.samples_per_point = 20000;
  settings.grid_step = 0.5;
  settings.seed = 7;
  const auto curve = decoder_curve({-3.0}, settings);
  CHECK(curve.size() == 3);
  CHECK(curve[0].output_mi > 0.0);
  CHECK(curve[2].output_mi > curve[0].output_mi);
  CHECK(curve[2].output_mi > 0.9);

  // with no direct channel the decoder has nothing at zero a-priori
  const auto blind = decoder_curve(SnrSpec::absent(), settings);
  CHECK(blind[0].output_mi < 0.01);
}

TEST_CASE("trajectory comes back with the configured shape") {
  TrajectorySettings settings;
  settings.snr_sd = {-2.0};
  settings.snr_r = {3.0};
  settings.max_steps = 8;
  settings.info_len = 256;
  settings.samples_per_point = 20000;
  settings.seed = 8;
  const Trajectory traj = simulate_trajectory(settings);
  CHECK(traj.predicted.size() == 8);
  CHECK(traj.measured.size() == 4);
  for (double v : traj.predicted) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // decoder extrinsic should improve across iterations at this operating point
  CHECK(traj.measured.back() > traj.measured.front());
}

}  // TEST_SUITE
