#include <gtest/gtest.h>

#include "ggdp/grey_relational.hpp"
#include "test_support.hpp"

using namespace ggdp;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::MatrixXd random_matrix(std::mt19937_64& g, Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = d(g);
  return m;
}

std::vector<std::string> labels(Eigen::Index m) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < m; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

}  // namespace

TEST(NormalizeColumns, DividesByColumnMean) {
  Eigen::MatrixXd m(3, 2);
  m << 2, 7, 4, 7, 6, 7;
  const auto z = normalize_columns(m);
  EXPECT_DOUBLE_EQ(z(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(z(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(z(2, 0), 1.5);
  for (int r = 0; r < 3; ++r) EXPECT_DOUBLE_EQ(z(r, 1), 1.0);
}

TEST(NormalizeColumns, ZeroMeanColumnNamed) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 2, -1;
  try {
    normalize_columns(m, {"GDP", "RDM"});
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_NE(std::string(e.what()).find("RDM"), std::string::npos);
  }
}

TEST(TwoPoleExtremes, Examples) {
  Eigen::MatrixXd same(2, 1);
  same << 1, 2;
  auto p = two_pole_extremes(vec({1, 2}), same);
  EXPECT_EQ(p.a, 0.0);
  EXPECT_EQ(p.b, 0.0);

  // |differences| = {0,1} for child [1,3] and {1,0} for child [0,2].
  Eigen::MatrixXd two(2, 2);
  two << 1, 0, 3, 2;
  p = two_pole_extremes(vec({1, 2}), two);
  EXPECT_EQ(p.a, 0.0);
  EXPECT_EQ(p.b, 1.0);

  Eigen::MatrixXd single(1, 1);
  single << 7;
  p = two_pole_extremes(vec({5}), single);
  EXPECT_EQ(p.a, 2.0);
  EXPECT_EQ(p.b, 2.0);

  EXPECT_THROW(two_pole_extremes(vec({1, 2, 3}), two), InputError);
}

TEST(GreyCoefficients, HandComputedTwoByTwo) {
  Eigen::MatrixXd children(2, 2);
  children << 1, 0, 3, 2;
  const auto c = grey_coefficients(vec({1, 2}), children, 0.5);
  EXPECT_EQ(c(0, 0), 1.0);
  EXPECT_NEAR(c(0, 1), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c(1, 0), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(c(1, 1), 1.0);
  const auto g = grey_grades(c);
  EXPECT_NEAR(g(0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(g(1), 2.0 / 3.0, 1e-15);
}

TEST(GreyCoefficients, ChildEqualToParentIsAllOnes) {
  Eigen::MatrixXd children(3, 2);
  children << 1, 5, 2, 1, 4, 9;
  const auto c = grey_coefficients(vec({1, 2, 4}), children, 0.5);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(c(k, 0), 1.0);
}

TEST(GreyCoefficients, DegenerateZeroSpreadIsAllOnes) {
  Eigen::MatrixXd children(3, 2);
  children << 1, 1, 2, 2, 4, 4;
  const auto c = grey_coefficients(vec({1, 2, 4}), children, 0.5);
  EXPECT_TRUE((c.array() == 1.0).all());
}

TEST(GreyCoefficients, RejectsBadRho) {
  Eigen::MatrixXd children(2, 1);
  children << 1, 2;
  EXPECT_THROW(grey_coefficients(vec({1, 3}), children, 0.0), InputError);
  EXPECT_THROW(grey_coefficients(vec({1, 3}), children, 1.5), InputError);
}

TEST(GreyGrades, Examples) {
  Eigen::MatrixXd col(2, 1);
  col << 1.0, 1.0 / 3.0;
  EXPECT_NEAR(grey_grades(col)(0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(grey_grades(Eigen::MatrixXd::Ones(4, 1))(0), 1.0);
  Eigen::MatrixXd row(1, 3);
  row << 0.2, 0.5, 0.9;
  EXPECT_EQ(grey_grades(row), row.row(0).transpose());
}

TEST(Gra, ChildEqualToParentGradeOne) {
  const auto parent = ggdp::testing::make_series("USA", "GGDP", "bn", 2000, {3, 4, 6, 5});
  auto child = parent;
  child.indicator = "copy";
  const auto r = gra(parent, {child});
  EXPECT_EQ(r.grades(0), 1.0);
}

TEST(Gra, ScaledParentGetsGradeOneUnderNormalization) {
  const auto x0 = vec({3, 4, 6, 5, 9});
  Eigen::MatrixXd children(5, 3);
  children.col(0) = vec({1, 8, 2, 7, 3});
  children.col(1) = 4.0 * x0;
  children.col(2) = vec({5, 5, 6, 6, 7});
  const auto r = gra("p", x0, labels(3), children);
  EXPECT_NEAR(r.grades(1), 1.0, 1e-12);
  EXPECT_EQ(r.ranking().front().label, "x2");
}

TEST(Gra, WithoutNormalizationMatchesRawFormula) {
  Eigen::MatrixXd children(2, 2);
  children << 1, 0, 3, 2;
  const auto r = gra("p", vec({1, 2}), {"a", "b"}, children, {0.5, false});
  EXPECT_EQ(r.a, 0.0);
  EXPECT_EQ(r.b, 1.0);
  EXPECT_NEAR(r.grades(0), 2.0 / 3.0, 1e-12);
}

TEST(Gra, RankingIsDescendingWithStableTies) {
  Eigen::MatrixXd children(2, 3);
  children << 0, 1, 1, 2, 3, 2;
  // first and second deviate from the parent by one unit each: equal grades.
  const auto r = gra("p", vec({1, 2}), {"first", "second", "third"}, children, {0.5, false});
  const auto rank = r.ranking();
  ASSERT_EQ(rank.size(), 3u);
  EXPECT_EQ(rank[0].label, "third");
  EXPECT_EQ(rank[1].label, "first");
  EXPECT_EQ(rank[2].label, "second");
  EXPECT_EQ(rank[1].grade, rank[2].grade);
}

TEST(Gra, RejectsMismatchedYearsAndShortSeries) {
  const auto p = ggdp::testing::make_series("USA", "GGDP", "bn", 2000, {3, 4, 6});
  const auto c = ggdp::testing::make_series("USA", "GDP", "bn", 2001, {3, 4, 6});
  EXPECT_THROW(gra(p, {c}), InputError);
  Eigen::MatrixXd one(1, 1);
  one << 2;
  EXPECT_THROW(gra("p", vec({1}), {"c"}, one), InputError);
}

// ---------------------------------------------------------------------------
// Properties

TEST(GraProperties, ScaleInvarianceBoundsAndColumnMeans) {
  auto g = ggdp::testing::rng(42);
  std::uniform_real_distribution<double> scale(0.01, 1000.0);
  std::uniform_int_distribution<int> dim(2, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = dim(g), m = dim(g) % 6 + 1;
    Eigen::VectorXd parent = random_matrix(g, n, 1, 0.5, 50.0).col(0);
    Eigen::MatrixXd children = random_matrix(g, n, m, 0.5, 50.0);
    const auto base = gra("p", parent, labels(m), children);

    const double lower = (base.a + 0.5 * base.b) / (base.b + 0.5 * base.b);
    EXPECT_GE(base.coefficients.minCoeff(), lower - 1e-15);
    EXPECT_LE(base.coefficients.maxCoeff(), 1.0);
    EXPECT_GT(base.grades.minCoeff(), 0.0);
    EXPECT_LE(base.grades.maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < m; ++i) {
      double sum = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) sum += base.coefficients(k, i);
      EXPECT_NEAR(base.grades(i), sum / static_cast<double>(n), 1e-15);
    }

    // Scale one random input column (parent = column -1).
    const int which = static_cast<int>(g() % static_cast<std::uint64_t>(m + 1)) - 1;
    const double c = scale(g);
    Eigen::VectorXd p2 = parent;
    Eigen::MatrixXd ch2 = children;
    if (which < 0) p2 *= c;
    else ch2.col(which) *= c;
    const auto scaled = gra("p", p2, labels(m), ch2);
    EXPECT_LE((scaled.grades - base.grades).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((scaled.coefficients - base.coefficients).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GraProperties, SelfIdentification) {
  auto g = ggdp::testing::rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 10, m = 1 + trial % 4;
    Eigen::VectorXd parent = random_matrix(g, n, 1, 1.0, 10.0).col(0);
    Eigen::MatrixXd children = random_matrix(g, n, m, 1.0, 10.0);
    const auto slot = static_cast<Eigen::Index>(g() % static_cast<std::uint64_t>(m));
    children.col(slot) = parent;
    const auto r = gra("p", parent, labels(m), children);
    EXPECT_EQ(r.a, 0.0);
    EXPECT_EQ(r.grades(slot), 1.0);
  }
}

TEST(GraProperties, CoefficientsWeaklyIncreaseWithRho) {
  auto g = ggdp::testing::rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd parent = random_matrix(g, 6, 1, 0.0, 10.0).col(0);
    Eigen::MatrixXd children = random_matrix(g, 6, 3, 0.0, 10.0);
    const auto poles = two_pole_extremes(parent, children);
    const auto diff = (children.colwise() - parent).cwiseAbs();
    Eigen::MatrixXd prev = grey_coefficients(parent, children, 0.05);
    for (int step = 2; step <= 20; ++step) {
      const auto cur = grey_coefficients(parent, children, 0.05 * step);
      for (Eigen::Index r = 0; r < diff.rows(); ++r)
        for (Eigen::Index c = 0; c < diff.cols(); ++c) {
          if (diff(r, c) > poles.a) {
            EXPECT_GE(cur(r, c), prev(r, c));
          }
        }
      prev = cur;
    }
  }
}
