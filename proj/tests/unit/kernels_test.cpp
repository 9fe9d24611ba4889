#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "cim/kernels.hpp"
#include "cim/rng.hpp"

namespace cim::kernels {
namespace {

std::vector<double> random_doubles(std::size_t n, Rng& rng, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = std::uniform_real_distribution<double>(lo, hi)(rng);
  return v;
}

std::vector<Amount> random_amounts(std::size_t n, Rng& rng, Amount hi) {
  std::vector<Amount> v(n);
  for (Amount& x : v) x = static_cast<Amount>(rng() % static_cast<std::uint64_t>(hi + 1));
  return v;
}

TEST(Kernels, ScalarReference) {
  const KernelSet& k = scalar();
  const Amount mine[] = {2, 0, 1, 0};
  const Amount theirs[] = {1, 1, 1, 0};
  const double values[] = {4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(k.contest_sum(mine, theirs, values, 4), 1.0);
  const Amount col[] = {0, 2, 3};
  const double w[] = {0.5, 0.25, 0.25};
  EXPECT_DOUBLE_EQ(k.signed_weight_sum(2, col, w, 3), 0.5 - 0.25);
  double dst[] = {1, 5, -2};
  const double src[] = {3, 1, 0};
  k.max_plus(dst, src, 1.5, 3);
  EXPECT_DOUBLE_EQ(dst[0], 4.5);
  EXPECT_DOUBLE_EQ(dst[1], 5.0);
  EXPECT_DOUBLE_EQ(dst[2], 1.5);
}

TEST(Kernels, ActiveIsAvailable) {
  bool found = false;
  for (const KernelSet* k : available()) found |= k == &active();
  EXPECT_TRUE(found);
  EXPECT_EQ(available().front(), &scalar());
}

TEST(Kernels, VariantsAgreeWithScalar) {
  Rng rng = make_stream(1, "kernels");
  const KernelSet& ref = scalar();
  for (const KernelSet* k : available()) {
    SCOPED_TRACE(std::string(k->name));
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1000u}) {
      const auto mine = random_amounts(n, rng, 3);
      const auto theirs = random_amounts(n, rng, 3);
      const auto values = random_doubles(n, rng, 0.0, 100.0);
      const double a = ref.contest_sum(mine.data(), theirs.data(), values.data(), n);
      const double b = k->contest_sum(mine.data(), theirs.data(), values.data(), n);
      double mag = 0.0;
      for (double v : values) mag += v;
      EXPECT_NEAR(a, b, 1e-12 * (1.0 + mag));

      const auto w = random_doubles(n, rng, 0.0, 1.0);
      for (Amount offer = 0; offer <= 4; ++offer) {
        const double x = ref.signed_weight_sum(offer, theirs.data(), w.data(), n);
        const double y = k->signed_weight_sum(offer, theirs.data(), w.data(), n);
        EXPECT_NEAR(x, y, 1e-12 * (1.0 + static_cast<double>(n)));
      }

      auto d1 = random_doubles(n, rng, -10.0, 10.0);
      auto d2 = d1;
      const auto src = random_doubles(n, rng, -10.0, 10.0);
      ref.max_plus(d1.data(), src.data(), 0.75, n);
      k->max_plus(d2.data(), src.data(), 0.75, n);
      EXPECT_EQ(std::memcmp(d1.data(), d2.data(), n * sizeof(double)), 0);
    }
  }
}

TEST(Kernels, MaxPlusHandlesInfinityAndTies) {
  const double inf = std::numeric_limits<double>::infinity();
  for (const KernelSet* k : available()) {
    SCOPED_TRACE(std::string(k->name));
    std::vector<double> dst{-inf, 0.0, -0.0, 1.0, -inf, 2.0, 3.0, -inf, 0.0};
    const std::vector<double> src{-inf, -0.5, 0.0, 0.5, 1.0, 1.5, -inf, -inf, 0.5};
    auto expect = dst;
    scalar().max_plus(expect.data(), src.data(), 0.5, dst.size());
    k->max_plus(dst.data(), src.data(), 0.5, dst.size());
    EXPECT_EQ(std::memcmp(dst.data(), expect.data(), dst.size() * sizeof(double)), 0);
  }
}

}  // namespace
}  // namespace cim::kernels
