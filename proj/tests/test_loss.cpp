#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lanecurve/loss.hpp"
#include "oracles.hpp"

using namespace lanecurve;

namespace {

Polyline straight(Point2 a, Point2 b, int n) {
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(a + (static_cast<double>(i) / (n - 1)) * (b - a));
  return Polyline(pts);
}

std::vector<double> flatten(const std::vector<Point2>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) {
    out.push_back(p.x);
    out.push_back(p.y);
  }
  return out;
}

std::vector<Point2> unflatten(const std::vector<double>& v) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) out.push_back({v[i], v[i + 1]});
  return out;
}

}  // namespace

TEST(RegressionLoss, KnownValues) {
  const auto a = straight({0, 0}, {0, 100}, 101);
  EXPECT_EQ(regression_loss(a, a), 0.0);
  const auto far = straight({18, 0}, {18, 100}, 101);
  EXPECT_DOUBLE_EQ(regression_loss(a, far), 1.0);
  const auto nine = straight({9, 0}, {9, 100}, 101);
  EXPECT_NEAR(regression_loss(a, nine), 2.0 / 3.0, 1e-15);
}

TEST(RegressionLoss, NormalizesPerPointBeforeAveraging) {
  const Polyline gt({{0, 0}, {0, 10}});
  const Polyline pred({{0, 0}, {0, 5}, {0, 10}, {10, 10}});
  // pred -> gt: distances 0, 0, 0, 10; gt -> pred: 0, 0.
  const double per_point = (1.0 + 1.0 + 1.0 + (18.0 - 10.0) / 28.0) / 4.0;
  EXPECT_NEAR(regression_loss(gt, pred), 1.0 - 0.5 * (1.0 + per_point), 1e-15);
}

TEST(LengthLoss, KnownValues) {
  const auto a = straight({0, 0}, {0, 10}, 5);
  EXPECT_EQ(length_loss(a, a), 0.0);
  EXPECT_EQ(length_loss(a, straight({0, 0}, {0, 20}, 5)), 1.0);
  EXPECT_EQ(length_loss(a, Polyline({{3, 3}, {3, 3}})), 1.0);
  EXPECT_THROW(length_loss(Polyline({{1, 1}, {1, 1}}), a), std::invalid_argument);
}

TEST(StartLoss, MeanOverCoordinates) {
  EXPECT_EQ(start_point_loss({1, 2}, {1, 2}), 0.0);
  EXPECT_EQ(start_point_loss({0, 0}, {3, 4}), 12.5);
}

TEST(FocalLoss, KnownValues) {
  EXPECT_NEAR(focal_cls_loss(1.0 - 1e-7, true), 0.0, 1e-12);
  EXPECT_NEAR(focal_cls_loss(0.5, true), 0.25 * 0.25 * std::log(2.0), 1e-15);
  for (double p : {0.1, 0.3, 0.8}) {
    EXPECT_NEAR(focal_cls_loss(p, true, 0.5, 0.0), -0.5 * std::log(p), 1e-15);
    EXPECT_NEAR(focal_cls_loss(p, false, 0.5, 0.0), -0.5 * std::log(1.0 - p), 1e-15);
  }
  EXPECT_TRUE(std::isfinite(focal_cls_loss(0.0, true)));
  EXPECT_TRUE(std::isfinite(focal_cls_loss(1.0, false)));
}

TEST(TotalLoss, WeightedSum) {
  const LossTerms parts{0.5, 0.1, 0.2, 0.3};
  EXPECT_EQ(total_loss(parts, {0, 0, 0, 0}).l_total, 0.0);
  EXPECT_NEAR(total_loss(parts).l_total, 1.1, 1e-15);
  EXPECT_NEAR(total_loss(parts, {2, 1, 1, 1}).l_total, 1.6, 1e-15);
  EXPECT_THROW(total_loss(parts, {-1, 1, 1, 1}), std::invalid_argument);
}

TEST(RegressionGradient, ZeroAtCoincidence) {
  std::mt19937 rng(2);
  const auto c = oracle::random_lane(rng);
  const auto g = regression_loss_gradient(sample(c), c);
  for (const auto& v : g) EXPECT_LT(norm(v), 1e-6);
}

TEST(RegressionGradient, ShiftedStraightLanePointsBack) {
  std::vector<Point2> cps;
  for (int i = 0; i < 8; ++i) cps.push_back({500.0 + 5.0, 580.0 - 60.0 * i});
  const BSplineCurve pred(3, cps);
  const auto gt = straight({500, 580}, {500, 160}, 300);
  const auto g = regression_loss_gradient(gt, pred);
  for (const auto& v : g) EXPECT_GT(v.x, 0.0);  // descent moves each x towards 500
}

TEST(RegressionGradient, MatchesCentralDifferences) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto gt_curve = oracle::random_lane(rng);
    const auto gt = sample(gt_curve);
    const auto pred = oracle::perturbed(gt_curve, rng, 12.0);
    const auto analytic = flatten(regression_loss_gradient(gt, pred));
    const auto f = [&](const std::vector<double>& x) {
      return regression_loss(gt, sample(pred.with_control_points(unflatten(x))));
    };
    const auto fd = oracle::central_difference(f, flatten(pred.control_points()), 1e-4);
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      scale = std::max(scale, std::abs(fd[i]));
      err = std::max(err, std::abs(fd[i] - analytic[i]));
    }
    EXPECT_LT(err / scale, 1e-4) << "trial " << trial;
  }
}

TEST(RegressionGradient, SampleGradientRejectsZeroLengthSegments) {
  const Polyline gt({{0, 0}, {0, 10}});
  const Polyline collapsed({{1, 1}, {1, 1}});
  EXPECT_THROW(regression_loss_sample_gradient(gt, collapsed), std::invalid_argument);
}

TEST(LengthGradient, MatchesCentralDifferences) {
  const Polyline gt({{0, 0}, {0, 10}, {0, 20}});
  const Polyline pred({{0, 0}, {3, 12}, {1, 30}});
  const auto analytic = flatten(length_loss_sample_gradient(gt, pred));
  const auto fd = oracle::central_difference(
      [&](const std::vector<double>& x) { return length_loss(gt, Polyline(unflatten(x))); }, flatten(pred.vec()), 1e-6);
  for (std::size_t i = 0; i < fd.size(); ++i) EXPECT_NEAR(analytic[i], fd[i], 1e-7);
}
