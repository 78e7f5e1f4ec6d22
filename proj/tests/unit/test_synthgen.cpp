#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gazekf/error.hpp"
#include "gazekf/random.hpp"
#include "gazekf/synthgen.hpp"

namespace gazekf {
namespace {

TEST(Synth, NoiselessDataEqualsTruth) {
  SynthConfig c;
  c.n = 10;
  c.sigma_pos = 0;
  c.sigma_vel = 0;
  const auto d = generate_synthetic(c);
  ASSERT_EQ(d.size(), 10u);
  EXPECT_EQ(d.noisy[0](0), 0.0);
  EXPECT_EQ(d.noisy[0](1), 1.0);
  for (std::size_t k = 0; k < d.size(); ++k) {
    EXPECT_EQ(d.noisy[k], d.truth[k]);
    EXPECT_EQ(d.times[k], static_cast<double>(k));
    EXPECT_EQ(d.truth[k](0), std::sin(d.times[k]));
    EXPECT_EQ(d.truth[k](1), std::cos(d.times[k]));
  }
}

TEST(Synth, SameSeedIsBitIdentical) {
  SynthConfig c;
  c.seed = 1234;
  const auto a = generate_synthetic(c);
  const auto b = generate_synthetic(c);
  EXPECT_EQ(a.times, b.times);
  EXPECT_EQ(a.noisy, b.noisy);
  c.seed = 1235;
  EXPECT_NE(generate_synthetic(c).noisy, a.noisy);
}

std::vector<double> residuals(const SynthDataset& d, int channel) {
  std::vector<double> r;
  for (std::size_t k = 0; k < d.size(); ++k) r.push_back(d.noisy[k](channel) - d.truth[k](channel));
  return r;
}

TEST(Synth, NoiseHasConfiguredSpreadAndIsWhite) {
  SynthConfig c;
  c.n = 10000;
  c.seed = 77;
  const auto d = generate_synthetic(c);
  for (int ch = 0; ch < 2; ++ch) {
    const auto r = residuals(d, ch);
    double mean = 0;
    for (double x : r) mean += x;
    mean /= r.size();
    double var = 0, lag = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      var += (r[i] - mean) * (r[i] - mean);
      if (i > 0) lag += (r[i] - mean) * (r[i - 1] - mean);
    }
    const double sd = std::sqrt(var / (r.size() - 1));
    EXPECT_GE(sd, 0.095) << "channel " << ch;
    EXPECT_LE(sd, 0.105) << "channel " << ch;
    EXPECT_LE(std::fabs(lag / var), 0.05) << "channel " << ch;
  }
}

TEST(Synth, TruthVelocityIsPositionDerivative) {
  for (double dt : {0.1, 0.05, 0.01}) {
    SynthConfig c;
    c.n = 500;
    c.dt = dt;
    const auto d = generate_synthetic(c);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      const double slope = (d.truth[k + 1](0) - d.truth[k](0)) / dt;
      EXPECT_LE(std::fabs(slope - d.truth[k](1)), dt / 2) << "dt=" << dt << " k=" << k;
      EXPECT_LE(std::fabs(d.truth[k](0)), 1.0);
      EXPECT_LE(std::fabs(d.truth[k](1)), 1.0);
    }
  }
}

TEST(Synth, RejectsInvalidConfig) {
  SynthConfig c;
  c.n = 0;
  EXPECT_THROW(generate_synthetic(c), ConfigError);
  c = SynthConfig{};
  c.dt = 0;
  EXPECT_THROW(generate_synthetic(c), ConfigError);
  c = SynthConfig{};
  c.sigma_vel = -0.1;
  EXPECT_THROW(generate_synthetic(c), ConfigError);
}

TEST(SynthCsv, RoundTripsExactly) {
  SynthConfig c;
  c.n = 25;
  c.dt = 0.3;
  const auto d = generate_synthetic(c);
  std::stringstream ss;
  write_synth_csv(ss, d);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t,pos_true,vel_true,pos_meas,vel_meas");
  const auto back = read_synth_csv(ss);
  EXPECT_EQ(back.times, d.times);
  EXPECT_EQ(back.truth, d.truth);
  EXPECT_EQ(back.noisy, d.noisy);
}

TEST(SynthCsv, RejectsMalformedInput) {
  std::stringstream bad_header("t,pos\n");
  EXPECT_THROW(read_synth_csv(bad_header), ParseError);
  std::stringstream bad_row("t,pos_true,vel_true,pos_meas,vel_meas\n0,1,2,3\n");
  try {
    read_synth_csv(bad_row);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Rng, GaussianMomentsAndDeterminism) {
  Rng a(5), b(5);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.gaussian();
    EXPECT_EQ(x, b.gaussian());
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(Rng, UniformRangeAndBelow) {
  Rng r(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7u);
  }
  EXPECT_EQ(r.below(1), 0u);
}

}  // namespace
}  // namespace gazekf
