#pragma once

#include <cstddef>
#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/geometry.hpp"

namespace lanecurve {

inline constexpr int kDefaultProposals = 60;
inline constexpr int kDefaultTopK = 3;
inline constexpr double kDefaultConfThreshold = 0.4;
inline constexpr double kDefaultNmsDistance = 15.0;

enum class Border { kLeft, kBottom, kRight };

/// Proposal anchors along the left, bottom and right image borders.
///
/// Index order walks the border: left edge top to bottom, bottom edge left to
/// right, right edge bottom to top. Each edge holds its points at uniform
/// spacing with half-spacing margins at both ends.
struct ReferencePointSet {
  std::vector<Point2> points;
  std::vector<Border> border_of;

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// N_p / 4 points on x = 0 and on x = width, N_p / 2 on y = height.
ReferencePointSet make_reference_points(int n_proposals, double width, double height);

struct Assignment {
  std::size_t gt_index = 0;
  std::vector<std::size_t> proposal_indices;
  std::vector<double> distances;
};

/// For each start point, the k nearest reference points (ties to the lower
/// index). A proposal may serve several ground truths.
std::vector<Assignment> assign_labels(const std::vector<Point2>& gt_starts, const ReferencePointSet& refs,
                                      int k = kDefaultTopK);

struct ScoredCurve {
  BSplineCurve curve;
  double confidence = 0.0;
};

/// Candidates under `conf_threshold` are dropped. Of the rest, sorted by
/// descending confidence (ties by index), a candidate is suppressed when any
/// higher-ranked candidate, suppressed or not, lies within
/// `distance_threshold` in symmetric curve distance. Survivors are returned
/// in rank order.
std::vector<std::size_t> fast_nms(const std::vector<ScoredCurve>& candidates,
                                  double distance_threshold = kDefaultNmsDistance,
                                  double conf_threshold = kDefaultConfThreshold, int n_dis = kDefaultSampleCount);

}  // namespace lanecurve
