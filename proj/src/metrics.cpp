#include "lanecurve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "lanecurve/distance.hpp"

namespace lanecurve {

namespace {

double round_half_up(double v) { return std::floor(v + 0.5); }

void check_canvas(Canvas canvas) {
  if (canvas.width <= 0 || canvas.height <= 0) throw std::invalid_argument("canvas size must be positive");
}

}  // namespace

double culane_stroke_width(Canvas canvas) {
  check_canvas(canvas);
  return kCulaneStrokeWidth * static_cast<double>(canvas.width) / static_cast<double>(kCulaneCanvas.width);
}

std::vector<std::uint8_t> rasterize_lane(const Polyline& lane, double width, Canvas canvas) {
  check_canvas(canvas);
  if (!(width > 0.0)) throw std::invalid_argument("stroke width must be positive");
  const double half = 0.5 * width;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(canvas.width) * static_cast<std::size_t>(canvas.height), 0);

  std::vector<Point2> verts;
  verts.reserve(lane.size());
  for (const auto& p : lane.points()) verts.push_back({round_half_up(p.x), round_half_up(p.y)});

  for (std::size_t s = 0; s + 1 < verts.size(); ++s) {
    const Point2 a = verts[s];
    const Point2 b = verts[s + 1];
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - half - 0.5)));
    const int x1 = std::min(canvas.width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + half)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - half - 0.5)));
    const int y1 = std::min(canvas.height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + half)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const std::size_t idx = static_cast<std::size_t>(y) * static_cast<std::size_t>(canvas.width) +
                                static_cast<std::size_t>(x);
        if (mask[idx]) continue;
        if (point_to_segment({x + 0.5, y + 0.5}, a, b).distance <= half) mask[idx] = 1;
      }
    }
  }
  return mask;
}

double lane_iou(const Polyline& pred, const Polyline& gt, double width, Canvas canvas) {
  const auto a = rasterize_lane(pred, width, canvas);
  const auto b = rasterize_lane(gt, width, canvas);
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += (a[i] & b[i]);
    uni += (a[i] | b[i]);
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

EvalResult score_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  EvalResult r{tp, fp, fn, 0.0, 0.0, 0.0};
  if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_match(const std::vector<std::vector<double>>& iou,
                                                              double threshold) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  std::size_t n_gt = 0;
  for (std::size_t p = 0; p < iou.size(); ++p) {
    n_gt = std::max(n_gt, iou[p].size());
    for (std::size_t g = 0; g < iou[p].size(); ++g)
      if (iou[p][g] >= threshold) pairs.emplace_back(iou[p][g], p, g);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  std::vector<bool> pred_used(iou.size(), false);
  std::vector<bool> gt_used(n_gt, false);
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (const auto& [v, p, g] : pairs) {
    if (pred_used[p] || gt_used[g]) continue;
    pred_used[p] = gt_used[g] = true;
    matches.emplace_back(p, g);
  }
  return matches;
}

EvalResult match_and_score(const std::vector<Polyline>& preds, const std::vector<Polyline>& gts, double iou_thresh,
                           double width, Canvas canvas) {
  if (!(iou_thresh > 0.0 && iou_thresh < 1.0)) throw std::invalid_argument("IoU threshold must lie in (0, 1)");
  std::vector<std::vector<std::uint8_t>> pred_masks;
  std::vector<std::vector<std::uint8_t>> gt_masks;
  for (const auto& p : preds) pred_masks.push_back(rasterize_lane(p, width, canvas));
  for (const auto& g : gts) gt_masks.push_back(rasterize_lane(g, width, canvas));

  std::vector<std::vector<double>> iou(preds.size(), std::vector<double>(gts.size(), 0.0));
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      std::size_t inter = 0;
      std::size_t uni = 0;
      const auto& a = pred_masks[p];
      const auto& b = gt_masks[g];
      for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] & b[i]);
        uni += (a[i] | b[i]);
      }
      iou[p][g] = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    }
  }
  const std::size_t tp = greedy_match(iou, iou_thresh).size();
  return score_counts(tp, preds.size() - tp, gts.size() - tp);
}

TusimpleResult tusimple_accuracy(const std::vector<RowLane>& preds, const std::vector<RowLane>& gts,
                                 const std::vector<double>& h_samples, double x_tolerance, double match_threshold) {
  const auto check = [&](const RowLane& lane) {
    if (lane.size() != h_samples.size()) throw std::invalid_argument("lane length does not match h_samples");
  };
  std::for_each(preds.begin(), preds.end(), check);
  std::for_each(gts.begin(), gts.end(), check);

  const auto valid_count = [](const RowLane& lane) {
    return static_cast<std::size_t>(std::count_if(lane.begin(), lane.end(), [](double x) { return x >= 0.0; }));
  };
  std::vector<const RowLane*> live_preds;
  for (const auto& p : preds)
    if (valid_count(p) > 0) live_preds.push_back(&p);

  TusimpleResult r;
  r.pred_lanes = live_preds.size();
  std::vector<double> pred_best(live_preds.size(), 0.0);
  for (const auto& gt : gts) {
    const std::size_t total = valid_count(gt);
    if (total == 0) continue;
    ++r.gt_lanes;
    r.gt_points += total;
    std::size_t best = 0;
    for (std::size_t p = 0; p < live_preds.size(); ++p) {
      const RowLane& pred = *live_preds[p];
      std::size_t correct = 0;
      for (std::size_t i = 0; i < gt.size(); ++i) {
        if (gt[i] >= 0.0 && pred[i] >= 0.0 && std::abs(pred[i] - gt[i]) < x_tolerance) ++correct;
      }
      best = std::max(best, correct);
      pred_best[p] = std::max(pred_best[p], static_cast<double>(correct) / static_cast<double>(total));
    }
    r.correct_points += best;
    if (static_cast<double>(best) / static_cast<double>(total) < match_threshold) ++r.fn;
  }
  r.fp = static_cast<std::size_t>(
      std::count_if(pred_best.begin(), pred_best.end(), [&](double a) { return a < match_threshold; }));
  return merge({r});
}

TusimpleResult merge(const std::vector<TusimpleResult>& frames) {
  TusimpleResult out;
  for (const auto& f : frames) {
    out.correct_points += f.correct_points;
    out.gt_points += f.gt_points;
    out.fp += f.fp;
    out.fn += f.fn;
    out.pred_lanes += f.pred_lanes;
    out.gt_lanes += f.gt_lanes;
  }
  if (out.gt_points > 0) out.accuracy = static_cast<double>(out.correct_points) / static_cast<double>(out.gt_points);
  if (out.pred_lanes > 0) out.fp_rate = static_cast<double>(out.fp) / static_cast<double>(out.pred_lanes);
  if (out.gt_lanes > 0) out.fn_rate = static_cast<double>(out.fn) / static_cast<double>(out.gt_lanes);
  out.f1 = score_counts(out.gt_lanes - out.fn, out.fp, out.fn).f1;
  return out;
}

}  // namespace lanecurve
