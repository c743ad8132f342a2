#include "lanecurve/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lanecurve {

namespace {

double mean_normalized_distance(const Polyline& from, const Polyline& to, ExtendedRadius r) {
  double sum = 0.0;
  for (const auto& p : from.points()) sum += normalize_distance(point_to_polyline(p, to), r);
  return sum / static_cast<double>(from.size());
}

// d/dd of (2r - d) / (d + 2r).
double normalized_slope(double d, ExtendedRadius r) {
  const double denom = d + 2.0 * r.value();
  return -4.0 * r.value() / (denom * denom);
}

void reject_zero_length_segments(const Polyline& poly, const char* which) {
  for (std::size_t i = 1; i < poly.size(); ++i) {
    if (poly[i] == poly[i - 1])
      throw std::invalid_argument(std::string("zero-length segment in ") + which + " polyline at index " +
                                  std::to_string(i - 1));
  }
}

}  // namespace

void LossWeights::validate() const {
  for (double w : {reg, length, start, cls}) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("loss weights must be finite and non-negative");
  }
}

double regression_loss(const Polyline& gt, const Polyline& pred, ExtendedRadius r) {
  return 1.0 - 0.5 * (mean_normalized_distance(gt, pred, r) + mean_normalized_distance(pred, gt, r));
}

double length_loss(const Polyline& gt, const Polyline& pred) {
  const double l_gt = curve_length(gt);
  if (!(l_gt > 0.0)) throw std::invalid_argument("ground-truth lane has zero length");
  return std::abs(l_gt - curve_length(pred)) / l_gt;
}

double start_point_loss(Point2 gt_start, Point2 pred_start) {
  const Point2 d = gt_start - pred_start;
  return 0.5 * (d.x * d.x + d.y * d.y);
}

double focal_cls_loss(double pred_conf, bool target, double alpha, double gamma) {
  if (!std::isfinite(pred_conf)) throw std::invalid_argument("confidence must be finite");
  const double p = std::clamp(pred_conf, kFocalEpsilon, 1.0 - kFocalEpsilon);
  const double p_t = target ? p : 1.0 - p;
  const double alpha_t = target ? alpha : 1.0 - alpha;
  return -alpha_t * std::pow(1.0 - p_t, gamma) * std::log(p_t);
}

LossBreakdown total_loss(const LossTerms& parts, const LossWeights& weights) {
  weights.validate();
  for (double v : {parts.reg, parts.length, parts.start, parts.cls}) {
    if (!std::isfinite(v)) throw std::invalid_argument("loss terms must be finite");
  }
  LossBreakdown out;
  out.l_reg = parts.reg;
  out.l_length = parts.length;
  out.l_start = parts.start;
  out.l_cls = parts.cls;
  out.l_total = weights.reg * parts.reg + weights.length * parts.length + weights.start * parts.start +
                weights.cls * parts.cls;
  return out;
}

std::vector<Point2> regression_loss_sample_gradient(const Polyline& gt, const Polyline& pred, ExtendedRadius r) {
  reject_zero_length_segments(gt, "ground-truth");
  reject_zero_length_segments(pred, "predicted");

  std::vector<Point2> grad(pred.size());

  // pred -> gt: each predicted point moves along its own distance gradient.
  const double w_pred = -0.5 / static_cast<double>(pred.size());
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const SegmentHit hit = nearest_segment(pred[k], gt);
    if (hit.distance < kCoincidentDistance) continue;
    const Point2 dir = (1.0 / hit.distance) * (pred[k] - hit.foot);
    grad[k] += (w_pred * normalized_slope(hit.distance, r)) * dir;
  }

  // gt -> pred: the nearest predicted segment moves; the foot parameter is
  // stationary so only its endpoint weights matter.
  const double w_gt = -0.5 / static_cast<double>(gt.size());
  for (const auto& g : gt.points()) {
    const SegmentHit hit = nearest_segment(g, pred);
    if (hit.distance < kCoincidentDistance) continue;
    const Point2 dir = (1.0 / hit.distance) * (hit.foot - g);
    const Point2 scaled = (w_gt * normalized_slope(hit.distance, r)) * dir;
    grad[hit.segment] += (1.0 - hit.t) * scaled;
    grad[hit.segment + 1] += hit.t * scaled;
  }
  return grad;
}

std::vector<Point2> length_loss_sample_gradient(const Polyline& gt, const Polyline& pred) {
  const double l_gt = curve_length(gt);
  if (!(l_gt > 0.0)) throw std::invalid_argument("ground-truth lane has zero length");
  const double l_pred = curve_length(pred);
  std::vector<Point2> grad(pred.size());
  if (l_pred == l_gt) return grad;
  const double scale = (l_pred > l_gt ? 1.0 : -1.0) / l_gt;
  for (std::size_t k = 1; k < pred.size(); ++k) {
    const Point2 seg = pred[k] - pred[k - 1];
    const double len = norm(seg);
    if (len == 0.0) continue;
    const Point2 unit = (scale / len) * seg;
    grad[k] += unit;
    grad[k - 1] -= unit;
  }
  return grad;
}

std::vector<Point2> regression_loss_gradient(const Polyline& gt, const BSplineCurve& pred, ExtendedRadius r,
                                             int n_dis) {
  const auto params = sample_parameters(n_dis);
  const Polyline samples = sample(pred, n_dis);
  const auto sample_grad = regression_loss_sample_gradient(gt, samples, r);
  std::vector<Point2> grad(pred.control_points().size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const auto weights = basis_functions(pred.degree(), params[k], pred.knots());
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += weights[i] * sample_grad[k];
  }
  return grad;
}

}  // namespace lanecurve
