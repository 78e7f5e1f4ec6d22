#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gazekf/ekf.hpp"
#include "gazekf/error.hpp"
#include "gazekf/metrics.hpp"
#include "gazekf/random.hpp"

#include "../support/nis_simulation.hpp"

namespace gazekf {
namespace {

std::vector<Vec> scalars(std::initializer_list<double> values) {
  std::vector<Vec> out;
  for (double v : values) out.push_back(Vec::Constant(1, v));
  return out;
}

std::vector<Vec> random_series(std::mt19937_64& rng, std::size_t n, int dim) {
  std::uniform_real_distribution<double> u(-4, 4);
  std::vector<Vec> s;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v(c) = u(rng);
    s.push_back(v);
  }
  return s;
}

TEST(Rmse, IdenticalSeriesIsZero) {
  std::mt19937_64 rng(1);
  const auto x = random_series(rng, 40, 2);
  const auto report = rmse(x, x);
  ASSERT_EQ(report.per_channel.size(), 2u);
  for (const auto& [name, value] : report.per_channel) EXPECT_EQ(value, 0.0);
  EXPECT_EQ(report.n_samples, 40u);
  EXPECT_EQ(report.skipped, 0u);
}

TEST(Rmse, HandComputedCases) {
  EXPECT_NEAR(rmse(scalars({0, 0, 0, 0}), scalars({1, 1, 1, 1})).at("ch0"), 1.0, 1e-12);
  // sqrt((1 + 9) / 2)
  EXPECT_NEAR(rmse(scalars({0, 0}), scalars({1, 3})).at("ch0"), 2.2360679774997896, 1e-12);
}

TEST(Rmse, ChannelsAreScoredSeparately) {
  std::vector<Vec> truth(3, Vec::Zero(2));
  std::vector<Vec> est(3, Vec::Zero(2));
  for (auto& e : est) e(1) = 2.0;
  const auto report = rmse(truth, est, {"pos", "vel"});
  EXPECT_EQ(report.at("pos"), 0.0);
  EXPECT_EQ(report.at("vel"), 2.0);
  EXPECT_THROW(report.at("acc"), std::out_of_range);
}

TEST(Rmse, MissingIndicesAreSkipped) {
  std::vector<std::optional<Vec>> truth = {Vec::Constant(1, 0), std::nullopt, Vec::Constant(1, 0),
                                           Vec::Constant(1, 0)};
  std::vector<std::optional<Vec>> est = {Vec::Constant(1, 2), Vec::Constant(1, 100), std::nullopt,
                                         Vec::Constant(1, 2)};
  const auto report = rmse(truth, est);
  EXPECT_EQ(report.n_samples, 2u);
  EXPECT_EQ(report.skipped, 2u);
  EXPECT_DOUBLE_EQ(report.at("ch0"), 2.0);
}

TEST(Rmse, Errors) {
  EXPECT_THROW(rmse(scalars({1, 2}), scalars({1})), ConfigError);
  std::vector<std::optional<Vec>> none(3);
  EXPECT_THROW(rmse(none, none), ConfigError);
  EXPECT_THROW(rmse(scalars({1}), scalars({1}), {"a", "b"}), ConfigError);
}

TEST(RmseProperty, SymmetricOffsetAndScale) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_series(rng, 1 + trial, 2);
    const auto y = random_series(rng, 1 + trial, 2);
    const auto xy = rmse(x, y);
    const auto yx = rmse(y, x);
    const double c = coef(rng);
    const double a = coef(rng);
    std::vector<Vec> shifted, ax, ay;
    for (std::size_t i = 0; i < x.size(); ++i) {
      shifted.push_back(x[i].array() + c);
      ax.push_back(a * x[i]);
      ay.push_back(a * y[i]);
    }
    const auto off = rmse(x, shifted);
    const auto scaled = rmse(ax, ay);
    for (std::size_t ch = 0; ch < 2; ++ch) {
      EXPECT_NEAR(xy.per_channel[ch].second, yx.per_channel[ch].second, 1e-12);
      EXPECT_NEAR(off.per_channel[ch].second, std::fabs(c), 1e-12 * (1 + std::fabs(c)));
      EXPECT_NEAR(scaled.per_channel[ch].second, std::fabs(a) * xy.per_channel[ch].second,
                  1e-12 * (1 + std::fabs(a) * xy.per_channel[ch].second));
    }
  }
}

TEST(RmseReport, SerializesToFlatJsonAndCsv) {
  RmseReport r;
  r.per_channel = {{"vel", 0.5}, {"pos", 0.25}};
  r.n_samples = 98;
  r.skipped = 2;
  const auto j = to_json(r);
  EXPECT_EQ(j["pos"], 0.25);
  EXPECT_EQ(j["vel"], 0.5);
  EXPECT_EQ(j["n_samples"], 98);
  EXPECT_EQ(j["skipped"], 2);
  EXPECT_EQ(csv_header(r), "pos,vel,n_samples,skipped");
  EXPECT_EQ(to_csv_row(r), "0.25,0.5,98,2");
}

TEST(Nis, Definition) {
  EXPECT_EQ(nis(Vec::Zero(2), Mat::Identity(2, 2)), 0.0);
  EXPECT_DOUBLE_EQ(nis(Vec::Constant(1, 1.0), Mat::Identity(1, 1)), 1.0);
  EXPECT_THROW(nis(Vec::Ones(2), Mat::Zero(2, 2)), NumericError);
  EXPECT_THROW(nis(Vec::Ones(2), Mat::Identity(3, 3)), ConfigError);
}

TEST(NisProperty, InvariantUnderCongruenceTransforms) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    Mat a(m, m), t(m, m);
    Vec nu(m);
    for (int i = 0; i < m; ++i) {
      nu(i) = u(rng);
      for (int j = 0; j < m; ++j) {
        a(i, j) = u(rng);
        t(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
      }
    }
    const Mat s = a * a.transpose() + 0.1 * Mat::Identity(m, m);
    const double base = nis(nu, s);
    const double transformed = nis(t * nu, t * s * t.transpose());
    EXPECT_NEAR(base, transformed, 1e-9 * (1 + base));
  }
}

TEST(Nis, SkipsPredictionOnlySteps) {
  const auto meas = make_identity_measurement(2, 1.0);
  StepRecord updated;
  updated.prior = {Vec::Zero(2), Mat::Identity(2, 2)};
  updated.innovation = Vec::Constant(2, 2.0);
  updated.gain = Mat::Identity(2, 2);
  updated.updated = true;
  StepRecord skipped;
  skipped.prior = updated.prior;
  const auto values = nis({updated, skipped}, meas);
  ASSERT_EQ(values.size(), 1u);
  // S = I + I, nu = [2, 2]: 4/2 + 4/2.
  EXPECT_DOUBLE_EQ(values[0], 4.0);
}

TEST(Nis, MonteCarloMeanMatchesMeasurementDimension) {
  for (int m : {1, 2}) {
    const double mean = testing_support::simulated_mean_nis(m, 100 + m);
    EXPECT_GE(mean, m - 0.2) << "m=" << m;
    EXPECT_LE(mean, m + 0.2) << "m=" << m;
  }
}

}  // namespace
}  // namespace gazekf
