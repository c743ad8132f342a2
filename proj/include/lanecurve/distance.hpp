#pragma once

#include <cstddef>

#include "lanecurve/geometry.hpp"

namespace lanecurve {

/// Half-width (pixels) by which a lane centerline is thickened when distances
/// are normalized.
class ExtendedRadius {
 public:
  static constexpr double kDefault = 9.0;

  constexpr ExtendedRadius() = default;
  explicit ExtendedRadius(double r);

  [[nodiscard]] constexpr double value() const { return r_; }

 private:
  double r_ = kDefault;
};

/// Which part of a segment realizes the point-to-segment distance.
enum class SegmentBranch {
  kInterior,  // perpendicular foot strictly inside the segment
  kStart,
  kEnd,
};

struct SegmentHit {
  double distance = 0.0;
  std::size_t segment = 0;
  /// Parameter of the closest point along the segment, in [0, 1].
  double t = 0.0;
  SegmentBranch branch = SegmentBranch::kStart;
  /// Closest point on the segment.
  Point2 foot;
};

/// Distance from `p` to segment [a, b]: the triangle height when both base
/// angles are acute, the nearer endpoint otherwise. A zero-length segment
/// behaves as the point `a`.
SegmentHit point_to_segment(Point2 p, Point2 a, Point2 b);

/// Closest segment of `poly` to `p`; the lowest segment index wins ties.
SegmentHit nearest_segment(Point2 p, const Polyline& poly);

double point_to_polyline(Point2 p, const Polyline& poly);

/// Mean over the points of `a` of their distance to polyline `b`.
double directed_distance(const Polyline& a, const Polyline& b);

struct DistanceReport {
  double d_a_to_b = 0.0;
  double d_b_to_a = 0.0;
  double d_symmetric = 0.0;
  /// Normalized directed averages in (-1, 1].
  double n_a_to_b = 1.0;
  double n_b_to_a = 1.0;
};

DistanceReport symmetric_distance(const Polyline& a, const Polyline& b, ExtendedRadius r = {});

/// (2r - d) / (d + 2r). Maps [0, inf) onto (-1, 1], strictly decreasing.
double normalize_distance(double d, ExtendedRadius r = {});

}  // namespace lanecurve
