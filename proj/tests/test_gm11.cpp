#include <gtest/gtest.h>

#include <cmath>

#include "ggdp/gm11.hpp"
#include "test_support.hpp"

using namespace ggdp;

namespace {

// Frozen from tests/oracles/gm11_oracle.py (50-digit mpmath evaluation of
// the reference listing) for the sequence below.
const std::vector<double> kSequence = {36.3, 36.8, 33.9, 34.6, 34.4, 34.8, 37.3, 37.4, 38.6, 39.5};
constexpr double kOracleA = -0.015662619107694121119;
constexpr double kOracleU = 33.293051695882891998;
constexpr double kOracleQ = 0.024389864718273909741;
const std::vector<double> kOracleFitted = {
    36.3,               34.12817539139669935, 34.666920066125147813, 35.214169321635299279,
    35.770057410566047986, 36.33472070485781669, 36.908297729207682804, 37.490929195052624511,
    38.082758035089223707, 38.683929438338294247};
const std::vector<double> kOracleForecast = {
    39.294590885763037627, 39.914892186449464065, 40.544985514357954829, 41.185025445654981831,
    41.835168996634142786, 42.495575662235814828, 43.166407455174876333, 43.847828945686095853,
    44.540007301896938626, 45.243112330837694995};

void expect_rel(double actual, double expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected)) << actual << " vs " << expected;
}

std::vector<double> geometric(double beta, double gamma, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = beta * std::pow(gamma, static_cast<double>(k));
  return v;
}

}  // namespace

TEST(Ago, Examples) {
  EXPECT_EQ(ago(std::vector<double>{1, 2, 3}), (std::vector<double>{1, 3, 6}));
  EXPECT_EQ(ago(std::vector<double>{4.5}), (std::vector<double>{4.5}));
  EXPECT_EQ(iago(std::vector<double>{1, 3, 6}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(iago(std::vector<double>{4.5}), (std::vector<double>{4.5}));
  EXPECT_TRUE(ago(std::vector<double>{}).empty());
}

TEST(Ago, InverseOnRandomSequences) {
  // Integer-valued doubles keep every partial sum exact, so both
  // compositions must be the identity bit for bit.
  auto g = ggdp::testing::rng(1);
  std::uniform_int_distribution<long long> d(-1'000'000, 1'000'000);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(1 + trial % 40);
    for (auto& v : x) v = static_cast<double>(d(g));
    EXPECT_EQ(iago(ago(x)), x);
    EXPECT_EQ(ago(iago(x)), x);
  }
}

TEST(FitGm11, MatchesOracleOnReferenceSequence) {
  const auto m = fit_gm11(kSequence);
  expect_rel(m.a, kOracleA, 1e-9);
  expect_rel(m.u, kOracleU, 1e-9);
  expect_rel(m.residual_q, kOracleQ, 1e-9);
  EXPECT_EQ(m.accuracy_class, AccuracyClass::good);
  ASSERT_EQ(m.fitted.size(), kOracleFitted.size());
  for (std::size_t k = 0; k < m.fitted.size(); ++k) expect_rel(m.fitted[k], kOracleFitted[k], 1e-9);
  const auto f = predict(m, 10);
  ASSERT_EQ(f.values.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) expect_rel(f.values[k], kOracleForecast[k], 1e-9);
}

TEST(FitGm11, RecoversGeometricParameters) {
  // x0(k) = 5 * 1.1^(k-1) satisfies x0(k) = -a z(k) + u exactly with
  // a = -2(g-1)/(g+1) and u = 2 beta / (g+1).
  const auto x = geometric(5.0, 1.1, 12);
  const auto m = fit_gm11(x);
  EXPECT_NEAR(m.a, -2.0 / 21.0, 1e-9);
  EXPECT_NEAR(m.u, 10.0 / 2.1, 1e-9);
  const auto x1 = ago(x);
  for (std::size_t k = 1; k < x.size(); ++k) {
    const double z = 0.5 * (x1[k] + x1[k - 1]);
    EXPECT_NEAR(x[k] - (-m.a * z + m.u), 0.0, 1e-9);
  }
}

TEST(FitGm11, ConstantSeriesIsDegenerate) {
  const std::vector<double> c(5, 7.0);
  const auto m = fit_gm11(c);
  EXPECT_EQ(m.a, 0.0);
  EXPECT_EQ(m.u, 7.0);
  EXPECT_EQ(m.fitted, c);
  EXPECT_EQ(m.residual_q, 0.0);
  const auto f = predict(m, 5);
  EXPECT_EQ(f.values, std::vector<double>(5, 7.0));
}

TEST(FitGm11, ConstantNonIntegerSeriesStaysFlat) {
  const std::vector<double> c(6, 0.1);
  const auto m = fit_gm11(c);
  EXPECT_LT(std::abs(m.a), 1e-12);
  for (double v : predict(m, 5).values) EXPECT_NEAR(v, 0.1, 1e-12);
}

TEST(FitGm11, Errors) {
  EXPECT_THROW(fit_gm11(std::vector<double>{1, 2, 3}), InputError);
  try {
    fit_gm11(std::vector<double>{1, 2, -3, 4});
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos);
  }
  EXPECT_THROW(fit_gm11(std::vector<double>{1, 2, std::nan(""), 4}), InputError);
}

TEST(FitGm11, ShiftEscapeHatch) {
  const std::vector<double> x = {-2, 0, 3, 5, 8, 12};
  const auto m = fit_gm11(x, {true});
  EXPECT_EQ(m.shift, 3.0);
  EXPECT_EQ(m.fitted.front(), x.front());
  EXPECT_EQ(m.x0_first, 1.0);
  const auto shifted = [&] {
    auto s = x;
    for (auto& v : s) v += 3.0;
    return fit_gm11(s);
  }();
  EXPECT_NEAR(m.a, shifted.a, 1e-15);
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(m.fitted[k] + 3.0, shifted.fitted[k], 1e-12);
}

TEST(Predict, HorizonZeroAndYears) {
  const auto m = fit_gm11(kSequence);
  const auto f0 = predict(m, 0);
  EXPECT_TRUE(f0.values.empty());
  EXPECT_EQ(f0.model.fitted, m.fitted);
  const auto f = predict(m, 3, 2007);
  EXPECT_EQ(f.years, (std::vector<int>{2017, 2018, 2019}));
}

TEST(Predict, FirstNStepsReproduceFitted) {
  const auto m = fit_gm11(kSequence);
  const auto all = detail::gm11_restore(m.a, m.u, m.x0_first, m.n + 10);
  for (std::size_t k = 0; k < m.n; ++k) EXPECT_EQ(all[k], m.fitted[k]);
}

TEST(Predict, NegativeAIncreasesPositiveADecreases) {
  const auto grow = fit_gm11(geometric(5.0, 1.1, 12));
  ASSERT_LT(grow.a, 0.0);
  auto f = predict(grow, 15).values;
  for (std::size_t k = 1; k < f.size(); ++k) EXPECT_GT(f[k], f[k - 1]);

  const auto decay = fit_gm11(geometric(80.0, 0.9, 10));
  ASSERT_GT(decay.a, 0.0);
  f = predict(decay, 15).values;
  for (std::size_t k = 1; k < f.size(); ++k) EXPECT_LT(f[k], f[k - 1]);
}

TEST(QTest, Examples) {
  const std::vector<double> o = {10, 10};
  auto q = q_test(o, o);
  EXPECT_EQ(q.q, 0.0);
  EXPECT_EQ(q.accuracy_class, AccuracyClass::excellent);
  q = q_test(o, std::vector<double>{9, 11});
  EXPECT_DOUBLE_EQ(q.q, 0.1);
  EXPECT_EQ(q.accuracy_class, AccuracyClass::qualified);
  EXPECT_THROW(q_test(std::vector<double>{0, 1}, std::vector<double>{0, 1}), ComputationError);
  EXPECT_THROW(q_test(std::vector<double>{1, 1}, std::vector<double>{1}), InputError);
}

TEST(QTest, ClassThresholds) {
  EXPECT_EQ(classify_q(0.01), AccuracyClass::excellent);
  EXPECT_EQ(classify_q(0.0100001), AccuracyClass::good);
  EXPECT_EQ(classify_q(0.05), AccuracyClass::good);
  EXPECT_EQ(classify_q(0.2), AccuracyClass::weak);
  EXPECT_EQ(classify_q(0.21), AccuracyClass::unqualified);
}

TEST(QTest, ScaleInvariant) {
  auto g = ggdp::testing::rng(21);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = ggdp::testing::uniform_vector(g, 4 + trial % 12, 10.0, 20.0);
    const double c = scale(g);
    auto y = x;
    for (auto& v : y) v *= c;
    EXPECT_NEAR(fit_gm11(x).residual_q, fit_gm11(y).residual_q, 1e-12);
  }
}

TEST(CheckApplicability, SlowGrowthIsClean) {
  // Ratios x0(k)/x1(k-1) for 1.05^k fall from 0.367 at the fourth point.
  EXPECT_TRUE(check_applicability(geometric(10.0, 1.05, 12)).empty());
}

TEST(CheckApplicability, JumpFlagsSmoothness) {
  const std::vector<double> x = {10, 10, 10, 10, 10, 100, 101, 102};
  const auto d = check_applicability(x);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d.front().kind, Diagnostic::Kind::smoothness);
  EXPECT_EQ(d.front().index, 5u);
  EXPECT_DOUBLE_EQ(d.front().value, 2.0);
}

TEST(CheckApplicability, ConstantSeriesIsClean) {
  EXPECT_TRUE(check_applicability(std::vector<double>(6, 3.0)).empty());
}

TEST(CheckApplicability, LargeDevelopmentCoefficientWarns) {
  const auto d = check_applicability(geometric(1.0, 1.6, 8));
  bool long_horizon = false;
  for (const auto& x : d) long_horizon = long_horizon || x.kind == Diagnostic::Kind::long_horizon;
  EXPECT_TRUE(long_horizon);
}
