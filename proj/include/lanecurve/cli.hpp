#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lanecurve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Shared defaults for every subcommand. A flat key=value file can override
/// them and command-line flags override the file.
struct CliConfig {
  int n_p = 60;
  double r = 9.0;
  int n_control = 8;
  int degree = 3;
  int n_dis = 300;
  double lambda_reg = 1.0;
  double lambda_length = 1.0;
  double lambda_start = 1.0;
  double lambda_cls = 1.0;
  double focal_alpha = 0.25;
  double focal_gamma = 2.0;
  int k = 3;
  double conf_threshold = 0.4;
  double nms_threshold = 15.0;
  double iou_threshold = 0.5;
  double x_tolerance = 20.0;
  int image_width = 1640;
  int image_height = 590;
  std::string parameterization = "chord_length";
  double step_size = 10.0;
  int steps = 1;
  double offset_px = 20.0;
  unsigned seed = 0;
};

/// Parses "key = value" lines on top of `base`. '#' starts a comment.
/// Throws std::invalid_argument on unknown keys or bad values.
CliConfig parse_config(std::string_view text, CliConfig base = {});
/// key=value lines in a fixed order; parse_config reads them back.
std::string format_config(const CliConfig& cfg);

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lanecurve::cli
