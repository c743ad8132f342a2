#include "lanecurve/descent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lanecurve/fit.hpp"

namespace lanecurve {

namespace {

// Sample weights: samples[k] = sum_i weights[k][i] * param_i, per coordinate
// for curves with point-valued parameters, x only for polynomials.
std::vector<std::vector<double>> sample_weights(const AnyCurve& curve, int n) {
  const auto params = sample_parameters(n);
  std::vector<std::vector<double>> rows(params.size());
  if (const auto* bs = std::get_if<BSplineCurve>(&curve)) {
    for (std::size_t k = 0; k < params.size(); ++k) rows[k] = basis_functions(bs->degree(), params[k], bs->knots());
  } else if (const auto* bz = std::get_if<BezierCurve>(&curve)) {
    const int deg = bz->degree();
    for (std::size_t k = 0; k < params.size(); ++k) {
      rows[k].resize(static_cast<std::size_t>(deg + 1));
      for (int i = 0; i <= deg; ++i) rows[k][static_cast<std::size_t>(i)] = bernstein(i, deg, params[k]);
    }
  } else {
    const auto& poly = std::get<PolynomialCurve>(curve);
    const std::size_t terms = poly.coefficients().size();
    for (std::size_t k = 0; k < params.size(); ++k) {
      // lane order runs opposite to the polynomial's own parameter
      const double t = params[params.size() - 1 - k];
      rows[k].resize(terms);
      double power = 1.0;
      for (std::size_t j = 0; j < terms; ++j) {
        rows[k][j] = power;
        power *= t;
      }
    }
  }
  return rows;
}

AnyCurve apply_step(const AnyCurve& curve, const std::vector<double>& grad, double step) {
  if (const auto* bs = std::get_if<BSplineCurve>(&curve)) {
    auto cps = bs->control_points();
    for (std::size_t i = 0; i < cps.size(); ++i) cps[i] -= step * Point2{grad[2 * i], grad[2 * i + 1]};
    return bs->with_control_points(std::move(cps));
  }
  if (const auto* bz = std::get_if<BezierCurve>(&curve)) {
    auto cps = bz->control_points();
    for (std::size_t i = 0; i < cps.size(); ++i) cps[i] -= step * Point2{grad[2 * i], grad[2 * i + 1]};
    return BezierCurve(std::move(cps));
  }
  const auto& poly = std::get<PolynomialCurve>(curve);
  auto a = to_normalized_coefficients(poly);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] -= step * grad[j];
  return from_normalized_coefficients(a, poly.y_start(), poly.y_end());
}

}  // namespace

void DescentConfig::validate() const {
  if (!(std::isfinite(step_size) && step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  if (n_dis < 2) throw std::invalid_argument("n_dis must be at least 2");
  weights.validate();
}

std::string representation_name(const AnyCurve& curve) {
  switch (curve.index()) {
    case 0:
      return "bspline";
    case 1:
      return "bezier";
    default:
      return "polynomial";
  }
}

Polyline lane_samples(const AnyCurve& curve, int n) {
  Polyline s = sample(curve, n);
  if (!std::holds_alternative<PolynomialCurve>(curve)) return s;
  std::vector<Point2> pts = s.vec();
  std::reverse(pts.begin(), pts.end());
  return Polyline(std::move(pts));
}

LossBreakdown descent_loss(const Polyline& target, const Polyline& samples, const DescentConfig& cfg) {
  LossTerms terms;
  terms.reg = regression_loss(target, samples, cfg.r);
  if (cfg.weights.length > 0.0) terms.length = length_loss(target, samples);
  if (cfg.weights.start > 0.0) terms.start = start_point_loss(target.front(), samples.front());
  LossWeights w = cfg.weights;
  w.cls = 0.0;
  return total_loss(terms, w);
}

std::vector<double> descent_gradient(const AnyCurve& curve, const Polyline& target, const DescentConfig& cfg) {
  const Polyline samples = lane_samples(curve, cfg.n_dis);
  std::vector<Point2> g(samples.size());
  if (cfg.weights.reg > 0.0) {
    const auto reg = regression_loss_sample_gradient(target, samples, cfg.r);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += cfg.weights.reg * reg[k];
  }
  if (cfg.weights.length > 0.0) {
    const auto len = length_loss_sample_gradient(target, samples);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += cfg.weights.length * len[k];
  }
  if (cfg.weights.start > 0.0) {
    // 0.5 * |S_pred - S_gt|^2
    g.front() += cfg.weights.start * (samples.front() - target.front());
  }

  const auto rows = sample_weights(curve, cfg.n_dis);
  const bool x_only = std::holds_alternative<PolynomialCurve>(curve);
  const std::size_t n_params = rows.front().size();
  std::vector<double> grad(x_only ? n_params : 2 * n_params, 0.0);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < n_params; ++i) {
      const double w = rows[k][i];
      if (w == 0.0) continue;
      if (x_only) {
        grad[i] += w * g[k].x;
      } else {
        grad[2 * i] += w * g[k].x;
        grad[2 * i + 1] += w * g[k].y;
      }
    }
  }
  return grad;
}

std::vector<DescentStep> fit_by_gradient_descent(const AnyCurve& init, const Polyline& target,
                                                 const DescentConfig& cfg) {
  cfg.validate();
  std::vector<DescentStep> trajectory;
  trajectory.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  trajectory.push_back({0, init, descent_loss(target, lane_samples(init, cfg.n_dis), cfg)});
  const double initial = trajectory.front().loss.l_total;

  for (int step = 1; step <= cfg.steps; ++step) {
    const AnyCurve& current = trajectory.back().curve;
    AnyCurve next = apply_step(current, descent_gradient(current, target, cfg), cfg.step_size);
    const LossBreakdown loss = descent_loss(target, lane_samples(next, cfg.n_dis), cfg);
    if (!std::isfinite(loss.l_total) || loss.l_total > 10.0 * initial + 1e-12) {
      std::ostringstream msg;
      msg << "gradient descent diverged at step " << step << ": loss " << loss.l_total << " vs initial " << initial
          << " (step_size " << cfg.step_size << ", " << representation_name(init) << ")";
      throw DescentDiverged(msg.str());
    }
    trajectory.push_back({step, std::move(next), loss});
  }
  return trajectory;
}

}  // namespace lanecurve
