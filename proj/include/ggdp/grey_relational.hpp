#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ggdp/error.hpp"
#include "ggdp/panel.hpp"

namespace ggdp {

struct GraOptions {
  double rho = 0.5;  // resolution coefficient, (0, 1]
  bool normalize = true;

  void check() const {
    if (!(rho > 0.0 && rho <= 1.0))
      throw InputError("grey_relational", "rho must lie in (0, 1], got " + std::to_string(rho));
  }
};

/// Two-pole extremes: global min / max of |parent(k) - child_i(k)|.
struct PoleExtremes {
  double a = 0.0;
  double b = 0.0;
};

struct RankedChild {
  std::string label;
  double grade = 0.0;
};

struct GreyRelationalResult {
  std::string parent_label;
  std::vector<std::string> child_labels;
  GraOptions options;
  Eigen::VectorXd normalized_parent;    // n
  Eigen::MatrixXd normalized_children;  // n x m
  double a = 0.0;
  double b = 0.0;
  Eigen::MatrixXd coefficients;  // n x m
  Eigen::VectorXd grades;        // m

  /// Children by descending grade; equal grades keep input order.
  std::vector<RankedChild> ranking() const {
    std::vector<RankedChild> out;
    for (std::size_t i = 0; i < child_labels.size(); ++i)
      out.push_back({child_labels[i], grades(static_cast<Eigen::Index>(i))});
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedChild& l, const RankedChild& r) { return l.grade > r.grade; });
    return out;
  }
};

/// Divides every cell by its column's arithmetic mean.
inline Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& m,
                                         const std::vector<std::string>& labels = {}) {
  if (m.rows() < 1) throw InputError("grey_relational", "normalize_columns needs at least one row");
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    // Scalar left-to-right sum: Eigen's vectorized mean depends on column
    // alignment, which would give identical columns different means.
    double sum = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) sum += m(r, c);
    const double mean = sum / static_cast<double>(m.rows());
    if (mean == 0.0 || !std::isfinite(mean)) {
      const auto name = static_cast<std::size_t>(c) < labels.size()
                            ? labels[static_cast<std::size_t>(c)]
                            : "column " + std::to_string(c);
      throw ComputationError("grey_relational", "zero-mean column " + name + " cannot be normalized");
    }
    out.col(c) = m.col(c) / mean;
  }
  return out;
}

namespace detail {

inline void check_gra_shapes(const Eigen::VectorXd& parent, const Eigen::MatrixXd& children) {
  if (parent.size() < 1 || children.cols() < 1)
    throw InputError("grey_relational", "need at least one observation and one child");
  if (children.rows() != parent.size())
    throw InputError("grey_relational",
                     "dimension mismatch: parent has " + std::to_string(parent.size()) +
                         " rows, children have " + std::to_string(children.rows()));
}

inline Eigen::MatrixXd abs_differences(const Eigen::VectorXd& parent,
                                       const Eigen::MatrixXd& children) {
  return (children.colwise() - parent).cwiseAbs();
}

}  // namespace detail

inline PoleExtremes two_pole_extremes(const Eigen::VectorXd& parent,
                                      const Eigen::MatrixXd& children) {
  detail::check_gra_shapes(parent, children);
  const auto diff = detail::abs_differences(parent, children);
  return {diff.minCoeff(), diff.maxCoeff()};
}

/// Deng grey relational coefficients (a + rho b) / (|x0(k) - xi(k)| + rho b).
/// When b = 0 every child coincides with the parent and all cells are 1.
inline Eigen::MatrixXd grey_coefficients(const Eigen::VectorXd& parent,
                                         const Eigen::MatrixXd& children, double rho) {
  GraOptions{rho, false}.check();
  detail::check_gra_shapes(parent, children);
  if (!parent.allFinite() || !children.allFinite())
    throw InputError("grey_relational", "non-finite input to grey_coefficients");

  const auto diff = detail::abs_differences(parent, children);
  const double a = diff.minCoeff();
  const double b = diff.maxCoeff();
  if (b == 0.0) return Eigen::MatrixXd::Ones(diff.rows(), diff.cols());

  const double num = a + rho * b;
  Eigen::MatrixXd out(diff.rows(), diff.cols());
  for (Eigen::Index c = 0; c < diff.cols(); ++c)
    for (Eigen::Index r = 0; r < diff.rows(); ++r)
      out(r, c) = diff(r, c) == a ? 1.0 : num / (diff(r, c) + rho * b);
  return out;
}

/// Column means of the coefficient matrix.
inline Eigen::VectorXd grey_grades(const Eigen::MatrixXd& coefficients) {
  if (coefficients.rows() < 1) throw InputError("grey_relational", "grey_grades needs at least one row");
  Eigen::VectorXd grades(coefficients.cols());
  for (Eigen::Index c = 0; c < coefficients.cols(); ++c) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < coefficients.rows(); ++r) sum += coefficients(r, c);
    grades(c) = sum / static_cast<double>(coefficients.rows());
  }
  return grades;
}

/// Full pipeline on pre-aligned columns.
inline GreyRelationalResult gra(const std::string& parent_label, const Eigen::VectorXd& parent,
                                const std::vector<std::string>& child_labels,
                                const Eigen::MatrixXd& children, const GraOptions& options = {}) {
  options.check();
  detail::check_gra_shapes(parent, children);
  if (parent.size() < 2) throw InputError("grey_relational", "GRA needs at least 2 observations");
  if (static_cast<Eigen::Index>(child_labels.size()) != children.cols())
    throw InputError("grey_relational", "child label count does not match child columns");

  GreyRelationalResult r;
  r.parent_label = parent_label;
  r.child_labels = child_labels;
  r.options = options;

  if (options.normalize) {
    Eigen::MatrixXd joint(parent.size(), children.cols() + 1);
    joint.col(0) = parent;
    joint.rightCols(children.cols()) = children;
    std::vector<std::string> labels{parent_label};
    labels.insert(labels.end(), child_labels.begin(), child_labels.end());
    const auto z = normalize_columns(joint, labels);
    r.normalized_parent = z.col(0);
    r.normalized_children = z.rightCols(children.cols());
  } else {
    r.normalized_parent = parent;
    r.normalized_children = children;
  }

  const auto poles = two_pole_extremes(r.normalized_parent, r.normalized_children);
  r.a = poles.a;
  r.b = poles.b;
  r.coefficients = grey_coefficients(r.normalized_parent, r.normalized_children, options.rho);
  r.grades = grey_grades(r.coefficients);
  return r;
}

/// Pipeline on panel series; all series must cover exactly the same years.
inline GreyRelationalResult gra(const IndicatorSeries& parent,
                                const std::vector<IndicatorSeries>& children,
                                const GraOptions& options = {}) {
  if (children.empty()) throw InputError("grey_relational", "GRA needs at least one child series");
  const auto years = parent.years();
  const auto n = static_cast<Eigen::Index>(years.size());
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(parent.values().data(), n);
  Eigen::MatrixXd c(n, static_cast<Eigen::Index>(children.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].years() != years)
      throw InputError("grey_relational", "mismatched year sets between " + parent.indicator +
                                              " and " + children[i].indicator);
    const auto vals = children[i].values();
    c.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::VectorXd>(vals.data(), n);
    labels.push_back(children[i].indicator);
  }
  return gra(parent.indicator, p, labels, c, options);
}

}  // namespace ggdp
