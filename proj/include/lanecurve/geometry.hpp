#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lanecurve {

/// A 2-D point in image pixel coordinates (x to the right, y downwards).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  constexpr Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(Point2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Ordered sample points of a curve. Holds at least two finite points.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> points);

  [[nodiscard]] std::span<const Point2> points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const Point2& operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] const Point2& front() const { return points_.front(); }
  [[nodiscard]] const Point2& back() const { return points_.back(); }
  [[nodiscard]] std::size_t segment_count() const { return points_.size() - 1; }

  [[nodiscard]] const std::vector<Point2>& vec() const { return points_; }

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point2> points_;
};

/// Sum of the Euclidean lengths of consecutive segments.
double curve_length(const Polyline& poly);

/// Returns the polyline with every point translated, rotated or otherwise
/// mapped by `f`.
template <typename F>
Polyline transform(const Polyline& poly, F&& f) {
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const auto& p : poly.points()) out.push_back(f(p));
  return Polyline(std::move(out));
}

}  // namespace lanecurve
