#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "lanecurve/geometry.hpp"

namespace lanecurve {

/// Number of samples per curve used for distances and losses.
inline constexpr int kDefaultSampleCount = 300;
inline constexpr int kDefaultDegree = 3;
inline constexpr int kDefaultControlPoints = 8;

/// Clamped quasi-uniform knot vector on [0, 1].
///
/// The first and last `degree + 1` knots are exactly 0 and 1; the interior
/// knots are uniformly spaced.
class KnotVector {
 public:
  /// Validates the clamped quasi-uniform layout. Interior spacing is checked
  /// to 1e-12 so that serialized vectors parse back.
  KnotVector(int degree, std::vector<double> values);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  /// Number of basis functions of full degree, i.e. n + 1.
  [[nodiscard]] std::size_t basis_count() const { return values_.size() - static_cast<std::size_t>(degree_) - 1; }

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  int degree_;
  std::vector<double> values_;
};

/// Knots for n + 1 control points of degree p. Interior knot j of n - p is
/// j / (n - p + 1).
KnotVector make_clamped_uniform_knots(int n, int p);

/// N_{i,p}(u) by the Cox-de Boor recursion. 0/0 terms are 0 and the last
/// non-empty span is closed on the right so that u = 1 is covered.
double basis(int i, int p, double u, const KnotVector& knots);

/// All N_{i,p}(u) for i = 0 .. knots.size() - p - 2, built bottom-up from the
/// degree-0 table with the same recursion as `basis`.
std::vector<double> basis_functions(int p, double u, const KnotVector& knots);

class BSplineCurve {
 public:
  /// Uses make_clamped_uniform_knots(control_points.size() - 1, degree).
  BSplineCurve(int degree, std::vector<Point2> control_points);
  BSplineCurve(int degree, std::vector<Point2> control_points, KnotVector knots);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const std::vector<Point2>& control_points() const { return control_points_; }
  [[nodiscard]] const KnotVector& knots() const { return knots_; }

  [[nodiscard]] BSplineCurve with_control_points(std::vector<Point2> control_points) const;

  friend bool operator==(const BSplineCurve&, const BSplineCurve&) = default;

 private:
  int degree_;
  std::vector<Point2> control_points_;
  KnotVector knots_;
};

class BezierCurve {
 public:
  explicit BezierCurve(std::vector<Point2> control_points);

  [[nodiscard]] int degree() const { return static_cast<int>(control_points_.size()) - 1; }
  [[nodiscard]] const std::vector<Point2>& control_points() const { return control_points_; }

  friend bool operator==(const BezierCurve&, const BezierCurve&) = default;

 private:
  std::vector<Point2> control_points_;
};

/// x as a polynomial in image y over [y_start, y_end]: x = sum_k c_k y^k.
class PolynomialCurve {
 public:
  PolynomialCurve(std::vector<double> coefficients, double y_start, double y_end);

  [[nodiscard]] const std::vector<double>& coefficients() const { return coefficients_; }
  [[nodiscard]] double y_start() const { return y_start_; }
  [[nodiscard]] double y_end() const { return y_end_; }
  [[nodiscard]] double y_at(double t) const { return y_start_ + t * (y_end_ - y_start_); }

  friend bool operator==(const PolynomialCurve&, const PolynomialCurve&) = default;

 private:
  std::vector<double> coefficients_;
  double y_start_;
  double y_end_;
};

using AnyCurve = std::variant<BSplineCurve, BezierCurve, PolynomialCurve>;

Point2 evaluate(const BSplineCurve& curve, double u);
Point2 evaluate_bezier(const BezierCurve& curve, double u);
/// t in [0, 1] maps linearly to y in [y_start, y_end].
Point2 evaluate_polynomial(const PolynomialCurve& curve, double t);

/// Bernstein polynomial B_{i,k}(u).
double bernstein(int i, int k, double u);

/// Points at u = k / (n - 1), k = 0 .. n - 1.
Polyline sample(const BSplineCurve& curve, int n = kDefaultSampleCount);
Polyline sample(const BezierCurve& curve, int n = kDefaultSampleCount);
Polyline sample(const PolynomialCurve& curve, int n = kDefaultSampleCount);
Polyline sample(const AnyCurve& curve, int n = kDefaultSampleCount);

/// Sample parameters u_k = k / (n - 1); the last one is exactly 1.
std::vector<double> sample_parameters(int n);

}  // namespace lanecurve
