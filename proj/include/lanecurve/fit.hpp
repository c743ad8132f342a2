#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/geometry.hpp"

namespace lanecurve {

/// A least-squares system that cannot be solved: too few points or a
/// rank-deficient basis matrix.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Parameterization { kChordLength, kUniform };

std::string to_string(Parameterization p);
Parameterization parse_parameterization(const std::string& name);

struct FitConfig {
  int n_control = kDefaultControlPoints;
  int degree = kDefaultDegree;
  Parameterization parameterization = Parameterization::kChordLength;

  void validate() const;
};

template <typename Curve>
struct FitResult {
  Curve curve;
  double rms_error = 0.0;
  double max_error = 0.0;
  /// Distance from each input point to the curve at its assigned parameter.
  std::vector<double> residuals;
};

using FitReport = FitResult<BSplineCurve>;

/// Normalized cumulative chord length; first 0, last exactly 1.
std::vector<double> chord_length_parameters(const Polyline& points);
std::vector<double> fit_parameters(const Polyline& points, Parameterization p);

/// Control points minimizing sum ||C(t_k) - q_k||^2 at parameters from
/// `cfg.parameterization`. Endpoints are not constrained.
FitReport fit_bspline_least_squares(const Polyline& points, const FitConfig& cfg = {});

/// Same system with caller-supplied parameters in [0, 1].
FitReport fit_bspline_least_squares(const Polyline& points, const std::vector<double>& params, const FitConfig& cfg);

FitResult<BezierCurve> fit_bezier_least_squares(const Polyline& points, int n_control,
                                                Parameterization p = Parameterization::kChordLength);

/// x as a polynomial of the given degree in y, over the y-range of `points`.
/// Solved in the normalized variable t = (y - y_min) / (y_max - y_min).
FitResult<PolynomialCurve> fit_polynomial_least_squares(const Polyline& points, int degree);

/// Coefficients of x(t) = sum_j a_j t^j with t = (y - y_start) / (y_end - y_start).
std::vector<double> to_normalized_coefficients(const PolynomialCurve& curve);
PolynomialCurve from_normalized_coefficients(const std::vector<double>& normalized, double y_start, double y_end);

}  // namespace lanecurve
