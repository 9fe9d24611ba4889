#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "cim/rng.hpp"
#include "cim/zero_sum.hpp"

namespace cim {
namespace {

// Independent check of the minimax certificate.
void expect_optimal(const PayoffMatrix& m, const ZeroSumSolution& s, double tol = 1e-7) {
  ASSERT_EQ(s.row_strategy.size(), m.rows());
  ASSERT_EQ(s.col_strategy.size(), m.cols());
  EXPECT_NEAR(std::accumulate(s.row_strategy.begin(), s.row_strategy.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(std::accumulate(s.col_strategy.begin(), s.col_strategy.end(), 0.0), 1.0, 1e-12);
  for (double p : s.row_strategy) EXPECT_TRUE(p == 0.0 || p >= kSupportCutoff);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double x = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) x += s.row_strategy[i] * m(i, j);
    EXPECT_GE(x, s.value - tol);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double x = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) x += m(i, j) * s.col_strategy[j];
    EXPECT_LE(x, s.value + tol);
  }
}

TEST(ZeroSum, MatchingPennies) {
  const PayoffMatrix m{{1, -1}, {-1, 1}};
  const auto s = solve_zero_sum(m);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  EXPECT_NEAR(s.row_strategy[0], 0.5, 1e-12);
  EXPECT_NEAR(s.col_strategy[0], 0.5, 1e-12);
}

TEST(ZeroSum, RockPaperScissors) {
  const PayoffMatrix m{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  const auto s = solve_zero_sum(m);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  for (double p : s.row_strategy) EXPECT_NEAR(p, 1.0 / 3.0, 1e-12);
  expect_optimal(m, s);
}

TEST(ZeroSum, TwoByTwoClosedForm) {
  Rng rng = make_stream(1, "zs");
  for (int t = 0; t < 200; ++t) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const PayoffMatrix m{{a, b}, {c, d}};
    const auto s = solve_zero_sum(m);
    // Pure saddle point or the mixed closed form.
    const double lower = std::max(std::min(a, b), std::min(c, d));
    const double upper = std::min(std::max(a, c), std::max(b, d));
    const double expect =
        lower == upper ? lower : (a * d - b * c) / (a + d - b - c);
    EXPECT_NEAR(s.value, expect, 1e-9);
    expect_optimal(m, s);
  }
}

TEST(ZeroSum, SaddlePointAndShift) {
  const PayoffMatrix m{{3, 5}, {1, 2}};
  const auto s = solve_zero_sum(m);
  EXPECT_NEAR(s.value, 3.0, 1e-12);
  EXPECT_EQ(s.row_strategy, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(s.col_strategy, (std::vector<double>{1.0, 0.0}));
  const PayoffMatrix neg{{-103, -105}, {-101, -102}};
  EXPECT_NEAR(solve_zero_sum(neg).value, -102.0, 1e-9);
}

TEST(ZeroSum, DegenerateMatrices) {
  const PayoffMatrix flat{{2, 2, 2}, {2, 2, 2}};
  EXPECT_NEAR(solve_zero_sum(flat).value, 2.0, 1e-12);
  const PayoffMatrix dup{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  const auto s = solve_zero_sum(dup);
  EXPECT_NEAR(s.value, 0.5, 1e-12);
  expect_optimal(dup, s);
  const PayoffMatrix single{{7.5}};
  EXPECT_DOUBLE_EQ(solve_zero_sum(single).value, 7.5);
}

TEST(ZeroSum, RandomGamesSatisfyCertificate) {
  Rng rng = make_stream(2, "zs");
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 1 + rng() % 30;
    const std::size_t c = 1 + rng() % 30;
    std::vector<double> data(r * c);
    // Few distinct values make ties and degenerate pivots common.
    for (double& x : data) x = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    const PayoffMatrix m(r, c, std::move(data));
    expect_optimal(m, solve_zero_sum(m));
  }
}

TEST(ZeroSum, SkewSymmetricHasZeroValue) {
  Rng rng = make_stream(3, "zs");
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 20;
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double x = std::uniform_real_distribution<double>(-3, 3)(rng);
        data[i * n + j] = x;
        data[j * n + i] = -x;
      }
    }
    EXPECT_NEAR(solve_zero_sum(PayoffMatrix(n, n, std::move(data))).value, 0.0, 1e-9);
  }
}

TEST(ZeroSum, Errors) {
  EXPECT_THROW(solve_zero_sum(PayoffMatrix()), Error);
  const PayoffMatrix bad{{1.0, std::numeric_limits<double>::quiet_NaN()}};
  EXPECT_THROW(solve_zero_sum(bad), Error);
  EXPECT_THROW(PayoffMatrix(2, 2, {1, 2, 3}), Error);
}

TEST(PayoffMatrix, Growth) {
  PayoffMatrix m;
  m.add_col(std::vector<double>{1, 2});
  m.add_col(std::vector<double>{3, 4});
  m.add_row(std::vector<double>{5, 6});
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 1), 3);
  EXPECT_EQ(m(1, 0), 2);
  EXPECT_EQ(m(2, 1), 6);
  EXPECT_THROW(m.add_row(std::vector<double>{1}), Error);
  EXPECT_THROW(m.add_col(std::vector<double>{1}), Error);
}

}  // namespace
}  // namespace cim
