#pragma once

// Random linear-Gaussian test problems shared by the unit and acceptance
// suites.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "gazekf/ekf.hpp"
#include "kalman_oracle.hpp"

namespace testing_support {

struct LinearProblem {
  oracle::LinearSystem sys;
  std::vector<double> x0;
  std::vector<double> p0;  // row-major n x n
  std::vector<std::optional<std::vector<double>>> zs;
};

inline gazekf::Mat to_eigen(const oracle::Matrix& m) {
  gazekf::Mat out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

inline oracle::Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double lo,
                                    double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  oracle::Matrix m(r, c);
  for (auto& v : m.a) v = u(rng);
  return m;
}

/// A A^T; rank `rank` (so possibly only semi-definite) plus `floor` I.
inline oracle::Matrix random_psd(std::mt19937_64& rng, std::size_t n, std::size_t rank,
                                 double floor) {
  const auto a = random_matrix(rng, n, rank, -0.5, 0.5);
  auto m = oracle::mul(a, oracle::transpose(a));
  for (std::size_t i = 0; i < n; ++i) m(i, i) += floor;
  return m;
}

/// n = 2 state, m in {1, 2}, a near-rotation F, random PSD Q, PD R, and
/// `steps` simulated measurements with roughly 10% dropouts.
inline LinearProblem random_linear_problem(std::mt19937_64& rng, std::size_t m, std::size_t steps) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  LinearProblem p;
  const double theta = u(rng) * 0.5;
  const double scale = 0.9 + 0.1 * u(rng);
  p.sys.f = oracle::Matrix(2, 2);
  p.sys.f(0, 0) = scale * std::cos(theta);
  p.sys.f(0, 1) = -scale * std::sin(theta) + 0.1 * (u(rng) - 0.5);
  p.sys.f(1, 0) = scale * std::sin(theta);
  p.sys.f(1, 1) = scale * std::cos(theta);
  p.sys.q = random_psd(rng, 2, u(rng) < 0.3 ? 1 : 2, 0.0);
  p.sys.r = random_psd(rng, m, m, 0.05);
  p.sys.h = m == 2 ? oracle::add(oracle::Matrix::identity(2), random_matrix(rng, 2, 2, -0.3, 0.3))
                   : random_matrix(rng, 1, 2, 0.5, 1.5);
  p.x0 = {g(rng), g(rng)};
  const auto p0 = random_psd(rng, 2, 2, 0.5);
  p.p0 = p0.a;

  std::vector<double> x = {g(rng), g(rng)};
  for (std::size_t t = 0; t < steps; ++t) {
    const double w0 = 0.1 * g(rng);
    const double w1 = 0.1 * g(rng);
    x = {p.sys.f(0, 0) * x[0] + p.sys.f(0, 1) * x[1] + w0,
         p.sys.f(1, 0) * x[0] + p.sys.f(1, 1) * x[1] + w1};
    if (u(rng) < 0.1) {
      p.zs.emplace_back(std::nullopt);
      continue;
    }
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) {
      z[i] = p.sys.h(i, 0) * x[0] + p.sys.h(i, 1) * x[1] + 0.2 * g(rng);
    }
    p.zs.emplace_back(z);
  }
  return p;
}

/// The same problem expressed as library models.
inline gazekf::FilterConfig to_filter_config(const LinearProblem& p) {
  const gazekf::Mat f = to_eigen(p.sys.f);
  const gazekf::Mat h = to_eigen(p.sys.h);
  gazekf::ProcessModel process(
      "linear", [f](const gazekf::Vec& x) -> gazekf::Vec { return f * x; },
      [f](const gazekf::Vec&) -> gazekf::Mat { return f; }, to_eigen(p.sys.q), 1.0);
  gazekf::MeasurementModel measurement(
      "linear", [h](const gazekf::Vec& x) -> gazekf::Vec { return h * x; },
      [h](const gazekf::Vec&) -> gazekf::Mat { return h; }, to_eigen(p.sys.r), 2);
  gazekf::Vec x0(2);
  x0 << p.x0[0], p.x0[1];
  gazekf::Mat p0(2, 2);
  p0 << p.p0[0], p.p0[1], p.p0[2], p.p0[3];
  return {x0, p0, process, measurement};
}

inline gazekf::TimedSeries to_series(const LinearProblem& p) {
  gazekf::TimedSeries s;
  for (std::size_t t = 0; t < p.zs.size(); ++t) {
    std::optional<gazekf::Vec> z;
    if (p.zs[t]) {
      z = gazekf::Vec::Map(p.zs[t]->data(), static_cast<Eigen::Index>(p.zs[t]->size()));
    }
    s.samples.push_back({static_cast<double>(t), z});
  }
  return s;
}

inline oracle::Belief oracle_initial(const LinearProblem& p) {
  oracle::Belief b{oracle::Matrix(2, 1), oracle::Matrix(2, 2)};
  b.x.a = p.x0;
  b.p.a = p.p0;
  return b;
}

/// Largest elementwise difference between the library run and the oracle run.
inline double max_oracle_deviation(const LinearProblem& p) {
  const auto records = gazekf::run_filter(to_series(p), to_filter_config(p));
  const auto expected = oracle::run(p.sys, oracle_initial(p), p.zs);
  double worst = 0.0;
  for (std::size_t t = 0; t < records.size(); ++t) {
    const auto& got = records[t].posterior;
    for (std::size_t i = 0; i < 2; ++i) {
      worst = std::max(worst, std::fabs(got.mean(static_cast<Eigen::Index>(i)) - expected[t].x(i, 0)));
      for (std::size_t j = 0; j < 2; ++j) {
        worst = std::max(worst, std::fabs(got.cov(static_cast<Eigen::Index>(i),
                                                  static_cast<Eigen::Index>(j)) -
                                          expected[t].p(i, j)));
      }
    }
  }
  return worst;
}

}  // namespace testing_support
