#include "lanecurve/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lanecurve/distance.hpp"

namespace lanecurve {

ReferencePointSet make_reference_points(int n_proposals, double width, double height) {
  if (n_proposals <= 0 || n_proposals % 4 != 0)
    throw std::invalid_argument("number of proposals must be a positive multiple of 4, got " +
                                std::to_string(n_proposals));
  if (!(width > 0.0 && height > 0.0)) throw std::invalid_argument("image size must be positive");
  const int side = n_proposals / 4;
  const int bottom = n_proposals / 2;

  ReferencePointSet refs;
  refs.points.reserve(static_cast<std::size_t>(n_proposals));
  for (int j = 0; j < side; ++j) {
    refs.points.push_back({0.0, (j + 0.5) * height / side});
    refs.border_of.push_back(Border::kLeft);
  }
  for (int j = 0; j < bottom; ++j) {
    refs.points.push_back({(j + 0.5) * width / bottom, height});
    refs.border_of.push_back(Border::kBottom);
  }
  for (int j = side - 1; j >= 0; --j) {
    refs.points.push_back({width, (j + 0.5) * height / side});
    refs.border_of.push_back(Border::kRight);
  }
  return refs;
}

std::vector<Assignment> assign_labels(const std::vector<Point2>& gt_starts, const ReferencePointSet& refs, int k) {
  if (refs.points.empty()) throw std::invalid_argument("reference point set is empty");
  if (k < 1 || static_cast<std::size_t>(k) > refs.size())
    throw std::invalid_argument("k must lie in [1, number of reference points]");

  std::vector<Assignment> out;
  out.reserve(gt_starts.size());
  std::vector<double> dist(refs.size());
  std::vector<std::size_t> order(refs.size());
  for (std::size_t g = 0; g < gt_starts.size(); ++g) {
    for (std::size_t i = 0; i < refs.size(); ++i) dist[i] = distance(gt_starts[g], refs.points[i]);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](std::size_t a, std::size_t b) {
      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });
    Assignment a;
    a.gt_index = g;
    for (int j = 0; j < k; ++j) {
      a.proposal_indices.push_back(order[static_cast<std::size_t>(j)]);
      a.distances.push_back(dist[order[static_cast<std::size_t>(j)]]);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::size_t> fast_nms(const std::vector<ScoredCurve>& candidates, double distance_threshold,
                                  double conf_threshold, int n_dis) {
  if (!(distance_threshold > 0.0)) throw std::invalid_argument("NMS distance threshold must be positive");
  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!std::isfinite(candidates[i].confidence)) throw std::invalid_argument("non-finite confidence");
    if (candidates[i].confidence >= conf_threshold) ranked.push_back(i);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].confidence > candidates[b].confidence;
  });

  std::vector<Polyline> samples;
  samples.reserve(ranked.size());
  for (std::size_t i : ranked) samples.push_back(sample(candidates[i].curve, n_dis));

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < ranked.size(); ++j) {
    bool suppressed = false;
    for (std::size_t i = 0; i < j && !suppressed; ++i)
      suppressed = symmetric_distance(samples[i], samples[j]).d_symmetric < distance_threshold;
    if (!suppressed) kept.push_back(ranked[j]);
  }
  return kept;
}

}  // namespace lanecurve
