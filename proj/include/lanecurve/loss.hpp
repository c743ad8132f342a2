#pragma once

#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/distance.hpp"
#include "lanecurve/geometry.hpp"

namespace lanecurve {

/// Per-point distances below this are treated as coincident: their
/// regression-loss subgradient is zero.
inline constexpr double kCoincidentDistance = 1e-9;

inline constexpr double kFocalAlpha = 0.25;
inline constexpr double kFocalGamma = 2.0;
inline constexpr double kFocalEpsilon = 1e-7;

struct LossWeights {
  double reg = 1.0;
  double length = 1.0;
  double start = 1.0;
  double cls = 1.0;

  /// Throws if any weight is negative or non-finite.
  void validate() const;
};

/// Unweighted loss terms.
struct LossTerms {
  double reg = 0.0;
  double length = 0.0;
  double start = 0.0;
  double cls = 0.0;
};

struct LossBreakdown {
  double l_reg = 0.0;
  double l_length = 0.0;
  double l_start = 0.0;
  double l_cls = 0.0;
  double l_total = 0.0;
};

/// 1 - (Dn(gt -> pred) + Dn(pred -> gt)) / 2 where each directed term is the
/// mean of per-point normalized distances. Lies in [0, 2).
double regression_loss(const Polyline& gt, const Polyline& pred, ExtendedRadius r = {});

/// |l_gt - l_pred| / l_gt with polyline lengths.
double length_loss(const Polyline& gt, const Polyline& pred);

/// Mean over the two coordinates of the squared difference.
double start_point_loss(Point2 gt_start, Point2 pred_start);

/// -alpha_t (1 - p_t)^gamma log(p_t), confidence clamped to [eps, 1 - eps].
double focal_cls_loss(double pred_conf, bool target, double alpha = kFocalAlpha, double gamma = kFocalGamma);

LossBreakdown total_loss(const LossTerms& parts, const LossWeights& weights = {});

/// d L_reg / d pred[k] for every point of `pred`. Zero-length segments in
/// either polyline are rejected. Nearest-segment ties use the lowest index.
std::vector<Point2> regression_loss_sample_gradient(const Polyline& gt, const Polyline& pred, ExtendedRadius r = {});

/// d L_length / d pred[k]. Zero at l_pred == l_gt.
std::vector<Point2> length_loss_sample_gradient(const Polyline& gt, const Polyline& pred);

/// d L_reg(gt, sample(pred, n_dis)) / d P_i for each control point of `pred`.
std::vector<Point2> regression_loss_gradient(const Polyline& gt, const BSplineCurve& pred, ExtendedRadius r = {},
                                             int n_dis = kDefaultSampleCount);

}  // namespace lanecurve
