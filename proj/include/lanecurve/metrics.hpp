#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lanecurve/geometry.hpp"

namespace lanecurve {

struct Canvas {
  int width = 0;
  int height = 0;
};

inline constexpr Canvas kCulaneCanvas{1640, 590};
inline constexpr Canvas kTusimpleCanvas{1280, 720};
inline constexpr double kCulaneStrokeWidth = 30.0;
inline constexpr double kCulaneIouThreshold = 0.5;
inline constexpr double kTusimpleXTolerance = 20.0;
inline constexpr double kTusimpleMatchThreshold = 0.85;

/// 30 px at 1640 px image width, scaled with the canvas width.
double culane_stroke_width(Canvas canvas);

/// Row-major mask; a pixel is set when its center lies within width / 2 of
/// the polyline after rounding its vertices half-up to the integer grid.
std::vector<std::uint8_t> rasterize_lane(const Polyline& lane, double width, Canvas canvas);

/// Mask IoU of two lanes drawn as strokes. 0 when both masks are empty.
double lane_iou(const Polyline& pred, const Polyline& gt, double width, Canvas canvas);

struct EvalResult {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision, recall and F1 from counts; each ratio is 0 when undefined.
EvalResult score_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// One-to-one greedy matching on descending IoU over pairs with
/// iou[pred][gt] >= threshold; ties go to the lower (pred, gt) index.
std::vector<std::pair<std::size_t, std::size_t>> greedy_match(const std::vector<std::vector<double>>& iou,
                                                              double threshold);

EvalResult match_and_score(const std::vector<Polyline>& preds, const std::vector<Polyline>& gts,
                           double iou_thresh = kCulaneIouThreshold, double width = kCulaneStrokeWidth,
                           Canvas canvas = kCulaneCanvas);

/// Lanes as x-coordinates at the rows of h_samples; negative means absent.
using RowLane = std::vector<double>;

struct TusimpleResult {
  double accuracy = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  std::size_t correct_points = 0;
  std::size_t gt_points = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t pred_lanes = 0;
  std::size_t gt_lanes = 0;
  /// F1 with matched ground truths as true positives.
  double f1 = 0.0;
};

/// A point is correct when |x_pred - x_gt| < x_tolerance. Each ground truth
/// takes its best prediction; below `match_threshold` it is a miss, and a
/// prediction whose best accuracy is below it is a false positive.
TusimpleResult tusimple_accuracy(const std::vector<RowLane>& preds, const std::vector<RowLane>& gts,
                                 const std::vector<double>& h_samples, double x_tolerance = kTusimpleXTolerance,
                                 double match_threshold = kTusimpleMatchThreshold);

/// Sums counters of several frames and recomputes the ratios.
TusimpleResult merge(const std::vector<TusimpleResult>& frames);

}  // namespace lanecurve
