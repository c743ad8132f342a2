#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lanecurve/fit.hpp"
#include "oracles.hpp"

using namespace lanecurve;

namespace {

double sum_sq_residuals(const BSplineCurve& c, const Polyline& pts, const std::vector<double>& params) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 d = evaluate(c, params[i]) - pts[i];
    s += dot(d, d);
  }
  return s;
}

Polyline sinusoid_lane(double amp, double phase) {
  std::vector<Point2> pts;
  for (int row = 0; row < 48; ++row) {
    const double y = 710.0 - 10.0 * row;
    pts.push_back({640.0 + 0.4 * (710.0 - y) + amp * std::sin(y / 90.0 + phase), y});
  }
  return Polyline(pts);
}

}  // namespace

TEST(ChordLength, NormalizedAndExactEnds) {
  const auto t = chord_length_parameters(Polyline({{0, 0}, {3, 4}, {3, 9}, {3, 10}}));
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t[1], 5.0 / 11.0);
  EXPECT_DOUBLE_EQ(t[2], 10.0 / 11.0);
  EXPECT_EQ(t.back(), 1.0);
  EXPECT_THROW(chord_length_parameters(Polyline({{1, 1}, {1, 1}})), FitError);
}

TEST(FitBSpline, RecoversCurveAtKnownParameters) {
  std::mt19937 rng(12);
  const auto c = oracle::random_lane(rng);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> params{0.0};
  for (int i = 0; i < 38; ++i) params.push_back(U(rng));
  params.push_back(1.0);
  std::sort(params.begin(), params.end());
  std::vector<Point2> pts;
  for (double u : params) pts.push_back(evaluate(c, u));
  const auto report = fit_bspline_least_squares(Polyline(pts), params, FitConfig{});
  EXPECT_LT(report.rms_error, 1e-6);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(report.curve.control_points()[i].x, c.control_points()[i].x, 1e-6);
    EXPECT_NEAR(report.curve.control_points()[i].y, c.control_points()[i].y, 1e-6);
  }
}

TEST(FitBSpline, ChordLengthReproducesOwnSamples) {
  // A curve sampled at the chord-length parameters of its own samples is
  // only approximately recovered, but a line is recovered exactly.
  std::vector<Point2> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({100.0 + 3.0 * i * i / 19.0, 580.0 - 3.0 * i * i / 19.0 * 4.0});
  const auto report = fit_bspline_least_squares(Polyline(pts));
  EXPECT_LT(report.rms_error, 1e-9);
  EXPECT_LE(report.rms_error, report.max_error);
}

TEST(FitBSpline, UnderdeterminedFails) {
  std::vector<Point2> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({1.0 * i, 10.0 * i});
  EXPECT_THROW(fit_bspline_least_squares(Polyline(pts)), FitError);
}

TEST(FitBSpline, RankDeficientFails) {
  // Ten points but every parameter falls in one knot span.
  std::vector<Point2> pts;
  std::vector<double> params;
  for (int i = 0; i < 10; ++i) {
    pts.push_back({1.0 * i, 2.0 * i});
    params.push_back(0.01 * i);
  }
  EXPECT_THROW(fit_bspline_least_squares(Polyline(pts), params, FitConfig{}), FitError);
}

TEST(FitBSpline, LeastSquaresOptimality) {
  const auto pts = sinusoid_lane(25.0, 0.3);
  const FitConfig cfg;
  const auto report = fit_bspline_least_squares(pts, cfg);
  const auto params = fit_parameters(pts, cfg.parameterization);
  const double best = sum_sq_residuals(report.curve, pts, params);
  for (std::size_t i = 0; i < 8; ++i) {
    for (Point2 d : {Point2{0.1, 0}, Point2{-0.1, 0}, Point2{0, 0.1}, Point2{0, -0.1}}) {
      auto cps = report.curve.control_points();
      cps[i] += d;
      EXPECT_GE(sum_sq_residuals(report.curve.with_control_points(cps), pts, params), best);
    }
  }
}

TEST(FitBSpline, SinusoidRowsAndRoundTrip) {
  for (double amp : {10.0, 20.0, 30.0}) {
    const auto report = fit_bspline_least_squares(sinusoid_lane(amp, amp / 10.0));
    EXPECT_LT(report.rms_error, 1.0) << amp;
    const FitConfig uniform{8, 3, Parameterization::kUniform};
    const auto refit = fit_bspline_least_squares(sample(report.curve), uniform);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_NEAR(refit.curve.control_points()[i].x, report.curve.control_points()[i].x, 1e-6);
      EXPECT_NEAR(refit.curve.control_points()[i].y, report.curve.control_points()[i].y, 1e-6);
    }
  }
}

TEST(FitConfig, Validation) {
  EXPECT_THROW((FitConfig{3, 3, Parameterization::kUniform}.validate()), std::invalid_argument);
  EXPECT_THROW((FitConfig{8, 0, Parameterization::kUniform}.validate()), std::invalid_argument);
  EXPECT_EQ(parse_parameterization("uniform"), Parameterization::kUniform);
  EXPECT_EQ(parse_parameterization("chord_length"), Parameterization::kChordLength);
  EXPECT_THROW(parse_parameterization("centripetal"), std::invalid_argument);
}

TEST(FitPolynomial, CollinearPointsReproduceLine) {
  std::vector<Point2> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({50.0 + 0.75 * (20.0 * i), 20.0 * i});
  const auto fit = fit_polynomial_least_squares(Polyline(pts), 3);
  EXPECT_LT(fit.rms_error, 1e-9);
  for (int i = 0; i <= 10; ++i) {
    const Point2 q = evaluate_polynomial(fit.curve, i / 10.0);
    EXPECT_NEAR(q.x, 50.0 + 0.75 * q.y, 1e-9);
  }
}

TEST(FitPolynomial, NormalizedCoefficientsRoundTrip) {
  const PolynomialCurve c({3.0, -0.5, 0.002, 1e-6}, 100.0, 500.0);
  const auto a = to_normalized_coefficients(c);
  const auto back = from_normalized_coefficients(a, 100.0, 500.0);
  for (double t : {0.0, 0.3, 0.8, 1.0})
    EXPECT_NEAR(evaluate_polynomial(back, t).x, evaluate_polynomial(c, t).x, 1e-9);
}

TEST(FitBezier, ReproducesCubic) {
  const BezierCurve c({{100, 580}, {180, 420}, {150, 300}, {260, 150}});
  const auto pts = sample(c, 50);
  const auto fit = fit_bezier_least_squares(pts, 4, Parameterization::kUniform);
  EXPECT_LT(fit.rms_error, 1e-9);
}
