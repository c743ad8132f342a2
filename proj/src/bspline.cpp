#include "lanecurve/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lanecurve {

namespace {

void check_unit_parameter(double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("curve parameter " + std::to_string(u) + " outside [0, 1]");
}

// Index of the last span [u_i, u_{i+1}) with positive length.
std::size_t last_nonempty_span(const std::vector<double>& k) {
  for (std::size_t i = k.size() - 1; i-- > 0;)
    if (k[i] < k[i + 1]) return i;
  return 0;
}

double basis0(std::size_t i, double u, const std::vector<double>& k) {
  if (k[i] <= u && u < k[i + 1]) return 1.0;
  if (u == k.back() && i == last_nonempty_span(k)) return 1.0;
  return 0.0;
}

double basis_recursive(std::size_t i, int p, double u, const std::vector<double>& k) {
  if (p == 0) return basis0(i, u, k);
  const auto d = static_cast<std::size_t>(p);
  double value = 0.0;
  const double left = k[i + d] - k[i];
  if (left > 0.0) value += (u - k[i]) / left * basis_recursive(i, p - 1, u, k);
  const double right = k[i + d + 1] - k[i + 1];
  if (right > 0.0) value += (k[i + d + 1] - u) / right * basis_recursive(i + 1, p - 1, u, k);
  return value;
}

}  // namespace

KnotVector::KnotVector(int degree, std::vector<double> values) : degree_(degree), values_(std::move(values)) {
  if (degree_ < 0) throw std::invalid_argument("knot vector degree must be non-negative");
  const auto clamp = static_cast<std::size_t>(degree_) + 1;
  if (values_.size() < 2 * clamp)
    throw std::invalid_argument("knot vector too short for degree " + std::to_string(degree_));
  for (std::size_t i = 0; i < clamp; ++i) {
    if (values_[i] != 0.0 || values_[values_.size() - 1 - i] != 1.0)
      throw std::invalid_argument("knot vector is not clamped to [0, 1]");
  }
  if (!std::is_sorted(values_.begin(), values_.end()))
    throw std::invalid_argument("knot vector is not non-decreasing");
  const std::size_t interior = values_.size() - 2 * clamp;
  for (std::size_t j = 1; j <= interior; ++j) {
    const double expected = static_cast<double>(j) / static_cast<double>(interior + 1);
    if (std::abs(values_[clamp - 1 + j] - expected) > 1e-12)
      throw std::invalid_argument("interior knots are not uniformly spaced");
  }
}

KnotVector make_clamped_uniform_knots(int n, int p) {
  if (p < 1) throw std::invalid_argument("degree must be at least 1");
  if (n < p)
    throw std::invalid_argument("need at least degree + 1 control points (n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n + p + 2));
  values.insert(values.end(), static_cast<std::size_t>(p) + 1, 0.0);
  const int interior = n - p;
  for (int j = 1; j <= interior; ++j) values.push_back(static_cast<double>(j) / static_cast<double>(interior + 1));
  values.insert(values.end(), static_cast<std::size_t>(p) + 1, 1.0);
  return KnotVector(p, std::move(values));
}

double basis(int i, int p, double u, const KnotVector& knots) {
  check_unit_parameter(u);
  if (p < 0) throw std::invalid_argument("negative basis degree");
  const auto& k = knots.values();
  if (i < 0 || static_cast<std::size_t>(i) + static_cast<std::size_t>(p) + 1 >= k.size())
    throw std::out_of_range("basis index " + std::to_string(i) + " out of range for degree " + std::to_string(p));
  return basis_recursive(static_cast<std::size_t>(i), p, u, k);
}

std::vector<double> basis_functions(int p, double u, const KnotVector& knots) {
  check_unit_parameter(u);
  const auto& k = knots.values();
  if (p < 0 || static_cast<std::size_t>(p) + 2 > k.size()) throw std::out_of_range("basis degree out of range");
  const std::size_t spans = k.size() - 1;
  std::vector<double> table(spans);
  for (std::size_t i = 0; i < spans; ++i) table[i] = (k[i] <= u && u < k[i + 1]) ? 1.0 : 0.0;
  if (u == k.back()) table[last_nonempty_span(k)] = 1.0;

  for (std::size_t d = 1; d <= static_cast<std::size_t>(p); ++d) {
    for (std::size_t i = 0; i + d < spans; ++i) {
      double value = 0.0;
      const double left = k[i + d] - k[i];
      if (left > 0.0) value += (u - k[i]) / left * table[i];
      const double right = k[i + d + 1] - k[i + 1];
      if (right > 0.0) value += (k[i + d + 1] - u) / right * table[i + 1];
      table[i] = value;
    }
  }
  table.resize(spans - static_cast<std::size_t>(p));
  return table;
}

BSplineCurve::BSplineCurve(int degree, std::vector<Point2> control_points)
    : BSplineCurve(degree, control_points, make_clamped_uniform_knots(static_cast<int>(control_points.size()) - 1, degree)) {}

BSplineCurve::BSplineCurve(int degree, std::vector<Point2> control_points, KnotVector knots)
    : degree_(degree), control_points_(std::move(control_points)), knots_(std::move(knots)) {
  if (degree_ < 1) throw std::invalid_argument("B-spline degree must be at least 1");
  if (control_points_.size() < static_cast<std::size_t>(degree_) + 1)
    throw std::invalid_argument("B-spline needs at least degree + 1 control points");
  if (knots_.degree() != degree_) throw std::invalid_argument("knot vector degree does not match curve degree");
  if (knots_.size() != control_points_.size() + static_cast<std::size_t>(degree_) + 1)
    throw std::invalid_argument("knot count must be n + p + 2");
  if (!std::all_of(control_points_.begin(), control_points_.end(), is_finite))
    throw std::invalid_argument("non-finite control point");
}

BSplineCurve BSplineCurve::with_control_points(std::vector<Point2> control_points) const {
  return BSplineCurve(degree_, std::move(control_points), knots_);
}

BezierCurve::BezierCurve(std::vector<Point2> control_points) : control_points_(std::move(control_points)) {
  if (control_points_.size() < 2) throw std::invalid_argument("Bezier curve needs at least 2 control points");
  if (!std::all_of(control_points_.begin(), control_points_.end(), is_finite))
    throw std::invalid_argument("non-finite control point");
}

PolynomialCurve::PolynomialCurve(std::vector<double> coefficients, double y_start, double y_end)
    : coefficients_(std::move(coefficients)), y_start_(y_start), y_end_(y_end) {
  if (coefficients_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  if (!std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return std::isfinite(c); }))
    throw std::invalid_argument("non-finite polynomial coefficient");
  if (!std::isfinite(y_start_) || !std::isfinite(y_end_) || !(y_start_ < y_end_))
    throw std::invalid_argument("polynomial range needs y_start < y_end");
}

Point2 evaluate(const BSplineCurve& curve, double u) {
  const auto weights = basis_functions(curve.degree(), u, curve.knots());
  Point2 out;
  const auto& cps = curve.control_points();
  for (std::size_t i = 0; i < cps.size(); ++i) out += weights[i] * cps[i];
  return out;
}

double bernstein(int i, int k, double u) {
  if (i < 0 || i > k) return 0.0;
  double binom = 1.0;
  for (int j = 1; j <= i; ++j) binom = binom * static_cast<double>(k - i + j) / static_cast<double>(j);
  return binom * std::pow(u, i) * std::pow(1.0 - u, k - i);
}

Point2 evaluate_bezier(const BezierCurve& curve, double u) {
  check_unit_parameter(u);
  const auto& cps = curve.control_points();
  const int k = curve.degree();
  Point2 out;
  for (int i = 0; i <= k; ++i) out += bernstein(i, k, u) * cps[static_cast<std::size_t>(i)];
  return out;
}

Point2 evaluate_polynomial(const PolynomialCurve& curve, double t) {
  check_unit_parameter(t);
  const double y = curve.y_at(t);
  const auto& c = curve.coefficients();
  double x = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) x = x * y + *it;
  return {x, y};
}

std::vector<double> sample_parameters(int n) {
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(n - 1);
  return u;
}

namespace {

template <typename Eval>
Polyline sample_with(int n, Eval&& eval) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (double u : sample_parameters(n)) pts.push_back(eval(u));
  return Polyline(std::move(pts));
}

}  // namespace

Polyline sample(const BSplineCurve& curve, int n) {
  return sample_with(n, [&](double u) { return evaluate(curve, u); });
}

Polyline sample(const BezierCurve& curve, int n) {
  return sample_with(n, [&](double u) { return evaluate_bezier(curve, u); });
}

Polyline sample(const PolynomialCurve& curve, int n) {
  return sample_with(n, [&](double t) { return evaluate_polynomial(curve, t); });
}

Polyline sample(const AnyCurve& curve, int n) {
  return std::visit([n](const auto& c) { return sample(c, n); }, curve);
}

}  // namespace lanecurve
