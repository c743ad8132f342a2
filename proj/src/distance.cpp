#include "lanecurve/distance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lanecurve {

ExtendedRadius::ExtendedRadius(double r) : r_(r) {
  if (!std::isfinite(r) || r <= 0.0) throw std::invalid_argument("extended radius must be finite and positive");
}

SegmentHit point_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return {distance(p, a), 0, 0.0, SegmentBranch::kStart, a};
  const double t = dot(p - a, ab) / len2;
  if (t <= 0.0) return {distance(p, a), 0, 0.0, SegmentBranch::kStart, a};
  if (t >= 1.0) return {distance(p, b), 0, 1.0, SegmentBranch::kEnd, b};
  const double height = std::abs(cross(ab, p - a)) / std::sqrt(len2);
  return {height, 0, t, SegmentBranch::kInterior, a + t * ab};
}

SegmentHit nearest_segment(Point2 p, const Polyline& poly) {
  const auto pts = poly.points();
  SegmentHit best = point_to_segment(p, pts[0], pts[1]);
  for (std::size_t s = 1; s + 1 < pts.size(); ++s) {
    SegmentHit hit = point_to_segment(p, pts[s], pts[s + 1]);
    if (hit.distance < best.distance) {
      hit.segment = s;
      best = hit;
    }
  }
  return best;
}

double point_to_polyline(Point2 p, const Polyline& poly) { return nearest_segment(p, poly).distance; }

double directed_distance(const Polyline& a, const Polyline& b) {
  double sum = 0.0;
  for (const auto& p : a.points()) sum += point_to_polyline(p, b);
  return sum / static_cast<double>(a.size());
}

DistanceReport symmetric_distance(const Polyline& a, const Polyline& b, ExtendedRadius r) {
  DistanceReport out;
  out.d_a_to_b = directed_distance(a, b);
  out.d_b_to_a = directed_distance(b, a);
  out.d_symmetric = out.d_a_to_b + out.d_b_to_a;
  out.n_a_to_b = normalize_distance(out.d_a_to_b, r);
  out.n_b_to_a = normalize_distance(out.d_b_to_a, r);
  return out;
}

double normalize_distance(double d, ExtendedRadius r) {
  if (!(d >= 0.0)) throw std::invalid_argument("distance must be non-negative, got " + std::to_string(d));
  const double two_r = 2.0 * r.value();
  return (two_r - d) / (d + two_r);
}

}  // namespace lanecurve
