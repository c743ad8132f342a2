#include "lanecurve/geometry.hpp"

#include <algorithm>

namespace lanecurve {

Polyline::Polyline(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("polyline needs at least 2 points");
  if (!std::all_of(points_.begin(), points_.end(), is_finite))
    throw std::invalid_argument("polyline contains a non-finite point");
}

double curve_length(const Polyline& poly) {
  double total = 0.0;
  for (std::size_t i = 1; i < poly.size(); ++i) total += distance(poly[i - 1], poly[i]);
  return total;
}

}  // namespace lanecurve
