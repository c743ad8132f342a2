#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lanecurve/distance.hpp"
#include "oracles.hpp"

using namespace lanecurve;

namespace {

Polyline straight(Point2 a, Point2 b, int n) {
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(a + (static_cast<double>(i) / (n - 1)) * (b - a));
  return Polyline(pts);
}

void expect_reports_near(const DistanceReport& a, const DistanceReport& b, double tol) {
  EXPECT_NEAR(a.d_a_to_b, b.d_a_to_b, tol);
  EXPECT_NEAR(a.d_b_to_a, b.d_b_to_a, tol);
  EXPECT_NEAR(a.d_symmetric, b.d_symmetric, tol);
  EXPECT_NEAR(a.n_a_to_b, b.n_a_to_b, tol);
  EXPECT_NEAR(a.n_b_to_a, b.n_b_to_a, tol);
}

}  // namespace

TEST(PointToSegment, Branches) {
  const auto interior = point_to_segment({0, 3}, {-1, 0}, {1, 0});
  EXPECT_EQ(interior.distance, 3.0);
  EXPECT_EQ(interior.branch, SegmentBranch::kInterior);
  EXPECT_EQ(interior.foot, (Point2{0, 0}));

  const auto past_end = point_to_segment({4, 4}, {-1, 0}, {1, 0});
  EXPECT_EQ(past_end.branch, SegmentBranch::kEnd);
  EXPECT_EQ(past_end.distance, 5.0);

  const auto before_start = point_to_segment({-4, -4}, {-1, 0}, {1, 0});
  EXPECT_EQ(before_start.branch, SegmentBranch::kStart);
  EXPECT_EQ(before_start.distance, 5.0);

  const auto degenerate = point_to_segment({3, 4}, {0, 0}, {0, 0});
  EXPECT_EQ(degenerate.distance, 5.0);
}

TEST(PointToPolyline, OnAndAbove) {
  const Polyline p({{-1, 0}, {1, 0}, {1, 5}});
  EXPECT_EQ(point_to_polyline({0.5, 0}, p), 0.0);
  EXPECT_EQ(point_to_polyline({1, 2}, p), 0.0);
  EXPECT_EQ(point_to_polyline({0, 2.5}, Polyline({{-1, 0}, {1, 0}})), 2.5);
}

TEST(PointToPolyline, TiesGoToLowestSegment) {
  const Polyline p({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  const auto hit = nearest_segment({5, 5}, p);
  EXPECT_EQ(hit.segment, 0u);
}

TEST(PointToPolyline, MatchesDenseOracle) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> X(200.0, 1400.0);
  std::uniform_real_distribution<double> Y(50.0, 590.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = oracle::random_lane(rng);
    const auto poly = sample(c, 300);
    const auto dense = oracle::dense_samples(c, 100000);
    for (int k = 0; k < 5; ++k) {
      const Point2 p{X(rng), Y(rng)};
      EXPECT_NEAR(point_to_polyline(p, poly), oracle::dense_nearest(p, dense), 0.01);
    }
  }
}

TEST(DirectedDistance, KnownCases) {
  const auto a = straight({0, 0}, {10, 0}, 11);
  EXPECT_EQ(directed_distance(a, a), 0.0);
  const auto b = straight({0, 4}, {10, 4}, 11);
  EXPECT_DOUBLE_EQ(directed_distance(a, b), 4.0);
}

TEST(DirectedDistance, AsymmetricWhenContained) {
  const auto a = straight({0, 0}, {0, 100}, 101);
  const auto b = straight({0, 0}, {0, 150}, 151);
  EXPECT_EQ(directed_distance(a, b), 0.0);
  EXPECT_GT(directed_distance(b, a), 0.0);
}

TEST(SymmetricDistance, IdenticalAndCollapsed) {
  const auto a = straight({0, 0}, {30, 100}, 50);
  const auto self = symmetric_distance(a, a);
  EXPECT_EQ(self.d_symmetric, 0.0);
  EXPECT_EQ(self.n_a_to_b, 1.0);

  const Polyline point({a[20], a[20], a[20]});
  const auto r = symmetric_distance(a, point);
  EXPECT_LT(r.d_b_to_a, 1e-9);
  EXPECT_GT(r.d_symmetric, 0.0);
  EXPECT_EQ(r.d_symmetric, r.d_a_to_b + r.d_b_to_a);
}

TEST(SymmetricDistance, ExtensionBeatsParameterOffset) {
  const auto a = straight({100, 500}, {100, 300}, 300);
  const auto b = straight({100, 500}, {100, 260}, 300);
  const auto c = straight({120, 500}, {120, 300}, 300);
  EXPECT_NEAR(oracle::parameter_matched_distance(a, b), oracle::parameter_matched_distance(a, c), 1e-6);
  EXPECT_LT(symmetric_distance(a, b).d_symmetric, symmetric_distance(a, c).d_symmetric);
}

TEST(SymmetricDistance, SymmetryAndRigidInvariance) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> shift(-300.0, 300.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ca = oracle::random_lane(rng);
    const auto a = sample(ca, 300);
    const auto b = sample(oracle::perturbed(ca, rng, 15.0), 300);
    const auto ab = symmetric_distance(a, b);
    const auto ba = symmetric_distance(b, a);
    EXPECT_NEAR(ab.d_symmetric, ba.d_symmetric, 1e-12);
    EXPECT_EQ(ab.d_a_to_b, ba.d_b_to_a);

    const Point2 t{shift(rng), shift(rng)};
    const auto shifted = symmetric_distance(transform(a, [&](Point2 p) { return p + t; }),
                                            transform(b, [&](Point2 p) { return p + t; }));
    expect_reports_near(shifted, ab, 1e-9);

    const double th = angle(rng);
    const auto rot = [&](Point2 p) {
      return Point2{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y};
    };
    expect_reports_near(symmetric_distance(transform(a, rot), transform(b, rot)), ab, 1e-9);
  }
}

TEST(Normalize, EndpointsAndMonotone) {
  EXPECT_EQ(normalize_distance(0.0), 1.0);
  EXPECT_EQ(normalize_distance(18.0), 0.0);
  EXPECT_EQ(normalize_distance(10.0, ExtendedRadius{5.0}), 0.0);
  double prev = 2.0;
  for (int i = 0; i < 1000; ++i) {
    const double v = normalize_distance(i * 0.1);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, -1.0);
    prev = v;
  }
  EXPECT_THROW(normalize_distance(-1.0), std::invalid_argument);
  EXPECT_THROW(ExtendedRadius{0.0}, std::invalid_argument);
}
