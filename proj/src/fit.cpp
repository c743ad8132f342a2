#include "lanecurve/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace lanecurve {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
  return out;
}

Eigen::MatrixXd solve_least_squares(const Eigen::MatrixXd& design, const Eigen::MatrixXd& rhs) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols())
    throw FitError("rank-deficient basis matrix (rank " + std::to_string(qr.rank()) + " < " +
                   std::to_string(design.cols()) + ")");
  return qr.solve(rhs);
}

void require_points(const Polyline& points, int unknowns) {
  if (points.size() < static_cast<std::size_t>(unknowns))
    throw FitError("need at least " + std::to_string(unknowns) + " points, got " + std::to_string(points.size()));
}

Eigen::MatrixXd point_matrix(const Polyline& points) {
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(points.size()), 2);
  for (std::size_t k = 0; k < points.size(); ++k) {
    rhs(static_cast<Eigen::Index>(k), 0) = points[k].x;
    rhs(static_cast<Eigen::Index>(k), 1) = points[k].y;
  }
  return rhs;
}

std::vector<Point2> to_points(const Eigen::MatrixXd& m) {
  std::vector<Point2> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = {m(i, 0), m(i, 1)};
  return out;
}

template <typename Curve, typename Eval>
FitResult<Curve> with_residuals(Curve curve, const Polyline& points, const std::vector<double>& params, Eval&& eval) {
  FitResult<Curve> out{std::move(curve), 0.0, 0.0, {}};
  out.residuals.reserve(points.size());
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double r = distance(eval(out.curve, params[k]), points[k]);
    out.residuals.push_back(r);
    sum_sq += r * r;
    out.max_error = std::max(out.max_error, r);
  }
  out.rms_error = std::sqrt(sum_sq / static_cast<double>(points.size()));
  return out;
}

}  // namespace

std::string to_string(Parameterization p) {
  return p == Parameterization::kChordLength ? "chord_length" : "uniform";
}

Parameterization parse_parameterization(const std::string& name) {
  if (name == "chord_length" || name == "chord") return Parameterization::kChordLength;
  if (name == "uniform") return Parameterization::kUniform;
  throw std::invalid_argument("unknown parameterization '" + name + "'");
}

void FitConfig::validate() const {
  if (degree < 1) throw std::invalid_argument("fit degree must be at least 1");
  if (n_control < degree + 1) throw std::invalid_argument("n_control must be at least degree + 1");
}

std::vector<double> chord_length_parameters(const Polyline& points) {
  std::vector<double> t(points.size(), 0.0);
  for (std::size_t k = 1; k < points.size(); ++k) t[k] = t[k - 1] + distance(points[k - 1], points[k]);
  const double total = t.back();
  if (!(total > 0.0)) throw FitError("all points coincide; chord length is zero");
  for (auto& v : t) v /= total;
  t.back() = 1.0;
  return t;
}

std::vector<double> fit_parameters(const Polyline& points, Parameterization p) {
  if (p == Parameterization::kChordLength) return chord_length_parameters(points);
  return sample_parameters(static_cast<int>(points.size()));
}

FitReport fit_bspline_least_squares(const Polyline& points, const FitConfig& cfg) {
  cfg.validate();
  require_points(points, cfg.n_control);
  return fit_bspline_least_squares(points, fit_parameters(points, cfg.parameterization), cfg);
}

FitReport fit_bspline_least_squares(const Polyline& points, const std::vector<double>& params, const FitConfig& cfg) {
  cfg.validate();
  require_points(points, cfg.n_control);
  if (params.size() != points.size()) throw std::invalid_argument("one parameter per point required");
  const KnotVector knots = make_clamped_uniform_knots(cfg.n_control - 1, cfg.degree);

  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), cfg.n_control);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto row = basis_functions(cfg.degree, params[k], knots);
    for (int i = 0; i < cfg.n_control; ++i)
      design(static_cast<Eigen::Index>(k), i) = row[static_cast<std::size_t>(i)];
  }
  const auto control = to_points(solve_least_squares(design, point_matrix(points)));
  return with_residuals(BSplineCurve(cfg.degree, control, knots), points, params,
                        [](const BSplineCurve& c, double u) { return evaluate(c, u); });
}

FitResult<BezierCurve> fit_bezier_least_squares(const Polyline& points, int n_control, Parameterization p) {
  if (n_control < 2) throw std::invalid_argument("Bezier fit needs at least 2 control points");
  require_points(points, n_control);
  const auto params = fit_parameters(points, p);
  const int k_deg = n_control - 1;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), n_control);
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (int i = 0; i < n_control; ++i) design(static_cast<Eigen::Index>(k), i) = bernstein(i, k_deg, params[k]);
  }
  const auto control = to_points(solve_least_squares(design, point_matrix(points)));
  return with_residuals(BezierCurve(control), points, params,
                        [](const BezierCurve& c, double u) { return evaluate_bezier(c, u); });
}

FitResult<PolynomialCurve> fit_polynomial_least_squares(const Polyline& points, int degree) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
  require_points(points, degree + 1);
  const auto [lo, hi] = std::minmax_element(points.points().begin(), points.points().end(),
                                            [](Point2 a, Point2 b) { return a.y < b.y; });
  const double y_start = lo->y;
  const double y_end = hi->y;
  if (!(y_end > y_start)) throw FitError("points span no vertical range");
  const double span = y_end - y_start;

  std::vector<double> params(points.size());
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), degree + 1);
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(points.size()), 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double t = (points[k].y - y_start) / span;
    params[k] = std::clamp(t, 0.0, 1.0);
    double power = 1.0;
    for (int j = 0; j <= degree; ++j) {
      design(static_cast<Eigen::Index>(k), j) = power;
      power *= t;
    }
    rhs(static_cast<Eigen::Index>(k), 0) = points[k].x;
  }
  const Eigen::MatrixXd sol = solve_least_squares(design, rhs);
  std::vector<double> normalized(static_cast<std::size_t>(degree + 1));
  for (int j = 0; j <= degree; ++j) normalized[static_cast<std::size_t>(j)] = sol(j, 0);
  return with_residuals(from_normalized_coefficients(normalized, y_start, y_end), points, params,
                        [](const PolynomialCurve& c, double t) { return evaluate_polynomial(c, t); });
}

std::vector<double> to_normalized_coefficients(const PolynomialCurve& curve) {
  // x = sum_k c_k (y0 + t * span)^k
  const auto& c = curve.coefficients();
  const double y0 = curve.y_start();
  const double span = curve.y_end() - curve.y_start();
  std::vector<double> a(c.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int kk = static_cast<int>(k);
    for (int j = 0; j <= kk; ++j)
      a[static_cast<std::size_t>(j)] += c[k] * binomial(kk, j) * std::pow(y0, kk - j) * std::pow(span, j);
  }
  return a;
}

PolynomialCurve from_normalized_coefficients(const std::vector<double>& normalized, double y_start, double y_end) {
  // x = sum_j a_j ((y - y0) / span)^j
  const double span = y_end - y_start;
  std::vector<double> c(normalized.size(), 0.0);
  for (std::size_t j = 0; j < normalized.size(); ++j) {
    const int jj = static_cast<int>(j);
    const double scaled = normalized[j] / std::pow(span, jj);
    for (int k = 0; k <= jj; ++k)
      c[static_cast<std::size_t>(k)] += scaled * binomial(jj, k) * std::pow(-y_start, jj - k);
  }
  return PolynomialCurve(std::move(c), y_start, y_end);
}

}  // namespace lanecurve
