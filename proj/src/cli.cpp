#include "lanecurve/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lanecurve/assignment.hpp"
#include "lanecurve/dataset.hpp"
#include "lanecurve/descent.hpp"
#include "lanecurve/errors.hpp"
#include "lanecurve/json_io.hpp"
#include "lanecurve/locality.hpp"
#include "lanecurve/loss.hpp"
#include "lanecurve/metrics.hpp"

namespace lanecurve::cli {

namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::invalid_argument("bad value '" + text + "' for config key '" + key + "'");
  return value;
}

struct ConfigKey {
  const char* name;
  std::function<std::string(const CliConfig&)> get;
  std::function<void(CliConfig&, const std::string&)> set;
};

template <typename T>
ConfigKey numeric_key(const char* name, T CliConfig::*field) {
  return {name,
          [field](const CliConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return format_double(c.*field);
            else return std::to_string(c.*field);
          },
          [field, name](CliConfig& c, const std::string& v) { c.*field = parse_value<T>(name, v); }};
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      numeric_key("n_p", &CliConfig::n_p),
      numeric_key("r", &CliConfig::r),
      numeric_key("n_control", &CliConfig::n_control),
      numeric_key("degree", &CliConfig::degree),
      numeric_key("n_dis", &CliConfig::n_dis),
      numeric_key("lambda_reg", &CliConfig::lambda_reg),
      numeric_key("lambda_length", &CliConfig::lambda_length),
      numeric_key("lambda_start", &CliConfig::lambda_start),
      numeric_key("lambda_cls", &CliConfig::lambda_cls),
      numeric_key("focal_alpha", &CliConfig::focal_alpha),
      numeric_key("focal_gamma", &CliConfig::focal_gamma),
      numeric_key("k", &CliConfig::k),
      numeric_key("conf_threshold", &CliConfig::conf_threshold),
      numeric_key("nms_threshold", &CliConfig::nms_threshold),
      numeric_key("iou_threshold", &CliConfig::iou_threshold),
      numeric_key("x_tolerance", &CliConfig::x_tolerance),
      numeric_key("image_width", &CliConfig::image_width),
      numeric_key("image_height", &CliConfig::image_height),
      {"parameterization", [](const CliConfig& c) { return c.parameterization; },
       [](CliConfig& c, const std::string& v) {
         parse_parameterization(v);
         c.parameterization = v;
       }},
      numeric_key("step_size", &CliConfig::step_size),
      numeric_key("steps", &CliConfig::steps),
      numeric_key("offset_px", &CliConfig::offset_px),
      numeric_key("seed", &CliConfig::seed),
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

struct Output {
  std::ostream& out;
  bool pretty = false;

  void emit(const json& j) const {
    if (pretty) flatten(j, "", out);
    else out << j.dump() << '\n';
  }
};

std::vector<std::string> sorted_lines_files(const fs::path& dir) {
  std::vector<std::string> rel;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 10 && name.ends_with(".lines.txt"))
      rel.push_back(fs::relative(entry.path(), dir).generic_string());
  }
  std::sort(rel.begin(), rel.end());
  return rel;
}

// ---- subcommands ----------------------------------------------------------

void cmd_fit(const CliConfig& cfg, const std::string& input, const std::string& format, const Output& o) {
  FitConfig fit_cfg{cfg.n_control, cfg.degree, parse_parameterization(cfg.parameterization)};
  fit_cfg.validate();

  const auto lanes_json = [](const Frame& fitted) {
    json lanes = json::array();
    for (const auto& lane : fitted.lanes) {
      json l{{"reduced_fit", lane.reduced_fit}};
      if (lane.fitted) {
        l["curve"] = to_json(*lane.fitted);
        l["rms_error"] = *lane.fit_rms;
      } else {
        l["curve"] = nullptr;
      }
      if (!lane.fit_note.empty()) l["note"] = lane.fit_note;
      lanes.push_back(std::move(l));
    }
    return lanes;
  };

  std::string fmt = format;
  if (fmt.empty()) {
    if (input.ends_with(".txt")) fmt = "culane";
    else if (input.ends_with(".jsonl")) fmt = "tusimple";
    else fmt = "points";
  }
  const std::string text = read_file(input);
  if (fmt == "culane") {
    const Frame fitted = build_ground_truth(frame_from_culane(text, input), fit_cfg);
    o.emit(json{{"source", input}, {"lanes", lanes_json(fitted)}});
  } else if (fmt == "tusimple") {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(pos, end - pos);
      pos = end + 1;
      if (trim(line).empty()) continue;
      const Frame fitted = build_ground_truth(parse_tusimple_line(line), fit_cfg);
      o.emit(json{{"source", fitted.raw_file}, {"lanes", lanes_json(fitted)}});
    }
  } else if (fmt == "points") {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("input is not valid JSON: ") + e.what());
    }
    const FitReport report = fit_bspline_least_squares(polyline_from_json(j), fit_cfg);
    o.emit(to_json(report));
  } else {
    throw std::invalid_argument("unknown input format '" + fmt + "'");
  }
}

void cmd_sample(const std::string& curve_path, int n, const Output& o) {
  o.emit(to_json(sample(bspline_from_json(read_json_file(curve_path)), n)));
}

void cmd_dist(const CliConfig& cfg, const std::string& a, const std::string& b, const Output& o) {
  const Polyline pa = lane_from_json(read_json_file(a), cfg.n_dis);
  const Polyline pb = lane_from_json(read_json_file(b), cfg.n_dis);
  o.emit(to_json(symmetric_distance(pa, pb, ExtendedRadius{cfg.r})));
}

void cmd_loss(const CliConfig& cfg, const std::string& gt_path, const std::string& pred_path,
              const std::vector<double>& confs, const std::vector<int>& targets, const Output& o) {
  const Polyline gt = lane_from_json(read_json_file(gt_path), cfg.n_dis);
  const Polyline pred = lane_from_json(read_json_file(pred_path), cfg.n_dis);
  if (confs.size() != targets.size())
    throw std::invalid_argument("--conf and --target must be given the same number of times");
  LossTerms terms;
  terms.reg = regression_loss(gt, pred, ExtendedRadius{cfg.r});
  terms.length = length_loss(gt, pred);
  terms.start = start_point_loss(gt.front(), pred.front());
  if (!confs.empty()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < confs.size(); ++i)
      sum += focal_cls_loss(confs[i], targets[i] != 0, cfg.focal_alpha, cfg.focal_gamma);
    terms.cls = sum / static_cast<double>(confs.size());
  }
  const LossWeights weights{cfg.lambda_reg, cfg.lambda_length, cfg.lambda_start, cfg.lambda_cls};
  o.emit(to_json(total_loss(terms, weights)));
}

void cmd_assign(const CliConfig& cfg, const std::string& starts_path, const Output& o) {
  const json j = read_json_file(starts_path);
  if (!j.is_array()) throw DataError("start points file must be a JSON array of [x, y]");
  std::vector<Point2> starts;
  for (const auto& p : j) starts.push_back(point_from_json(p));
  const auto refs = make_reference_points(cfg.n_p, cfg.image_width, cfg.image_height);
  json assignments = json::array();
  for (const auto& a : assign_labels(starts, refs, cfg.k)) assignments.push_back(to_json(a));
  o.emit(json{{"reference_points", to_json(refs)}, {"assignments", std::move(assignments)}});
}

void cmd_nms(const CliConfig& cfg, const std::string& input, const Output& o) {
  const json j = read_json_file(input);
  if (!j.is_array()) throw DataError("NMS input must be a JSON array of scored curves");
  std::vector<ScoredCurve> candidates;
  for (const auto& c : j) candidates.push_back(scored_curve_from_json(c));
  o.emit(json{{"kept", fast_nms(candidates, cfg.nms_threshold, cfg.conf_threshold, cfg.n_dis)}});
}

void cmd_eval_culane(const CliConfig& cfg, const std::string& pred, const std::string& gt, double stroke_width,
                     const std::string& tag, const Output& o) {
  const Canvas canvas{cfg.image_width, cfg.image_height};
  const double width = stroke_width > 0.0 ? stroke_width : culane_stroke_width(canvas);

  std::vector<std::pair<std::string, std::string>> frames;
  if (fs::is_directory(gt)) {
    if (!fs::is_directory(pred)) throw DataError("--pred must be a directory when --gt is one");
    for (const auto& rel : sorted_lines_files(gt))
      frames.emplace_back((fs::path(pred) / rel).string(), (fs::path(gt) / rel).string());
  } else {
    frames.emplace_back(pred, gt);
  }

  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  for (const auto& [pred_file, gt_file] : frames) {
    const auto gts = parse_culane_lines(read_file(gt_file));
    const auto preds = fs::exists(pred_file) ? parse_culane_lines(read_file(pred_file)) : std::vector<Polyline>{};
    const EvalResult r = match_and_score(preds, gts, cfg.iou_threshold, width, canvas);
    tp += r.tp;
    fp += r.fp;
    fn += r.fn;
  }
  json j = to_json(score_counts(tp, fp, fn));
  j["frames"] = frames.size();
  j["stroke_width"] = width;
  j["iou_threshold"] = cfg.iou_threshold;
  if (!tag.empty()) j["tag"] = tag;
  o.emit(j);
}

void cmd_eval_tusimple(const CliConfig& cfg, const std::string& pred, const std::string& gt, const Output& o) {
  const auto gts = parse_tusimple_file(read_file(gt));
  const auto preds = parse_tusimple_file(read_file(pred));
  std::vector<TusimpleResult> frames;
  for (const auto& g : gts) {
    const auto it = std::find_if(preds.begin(), preds.end(), [&](const auto& p) { return p.raw_file == g.raw_file; });
    std::vector<RowLane> lanes;
    if (it != preds.end()) {
      if (it->h_samples.size() != g.h_samples.size())
        throw DataError("prediction for '" + g.raw_file + "' has mismatched h_samples");
      lanes = it->lanes;
    }
    try {
      frames.push_back(tusimple_accuracy(lanes, g.lanes, g.h_samples, cfg.x_tolerance));
    } catch (const std::invalid_argument& e) {
      throw DataError("'" + g.raw_file + "': " + e.what());
    }
  }
  json j = to_json(merge(frames));
  j["frames"] = frames.size();
  o.emit(j);
}

void cmd_demo_locality(const CliConfig& cfg, bool mirror, int bezier_cps, int poly_degree, const std::string& csv,
                       const Output& o) {
  LocalityScenario s;
  s.offset_region = mirror ? OffsetRegion::kLower : OffsetRegion::kUpper;
  s.offset_px = cfg.offset_px;
  s.step_size = cfg.step_size;
  s.steps = cfg.steps;
  s.n_dis = cfg.n_dis;
  s.r = cfg.r;
  s.bspline_control_points = cfg.n_control;
  s.bspline_degree = cfg.degree;
  s.bezier_control_points = bezier_cps;
  s.polynomial_degree = poly_degree;
  const LocalityReport report = locality_experiment(s);
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw DataError("cannot write '" + csv + "'");
    f << locality_csv(report);
  }
  o.emit(to_json(report));
}

// Pulls "--config FILE" / "--config=FILE" out before CLI11 binds the other
// flags to the loaded values.
CliConfig load_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].starts_with("--config=")) path = args[i].substr(9);
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      return parse_config(ss.str());
    }
  }
  return {};
}

}  // namespace

CliConfig parse_config(std::string_view text, CliConfig base) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = config_keys();
    const auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey& k) { return key == k.name; });
    if (it == keys.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    it->set(base, value);
  }
  return base;
}

std::string format_config(const CliConfig& cfg) {
  std::string out;
  for (const auto& k : config_keys()) out += std::string(k.name) + "=" + k.get(cfg) + "\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  try {
    cfg = load_config(args);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Lane curve geometry toolkit: B-spline lanes, curve distances, losses, NMS and metrics",
               "lanecurve"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  bool pretty = false;
  app.add_option("--config", config_path, "key=value file with default settings");
  app.add_flag("--pretty", pretty, "human-readable output instead of JSON");
  app.add_option("--seed", cfg.seed, "seed for randomized generators");

  const auto add_shared = [&cfg](CLI::App* sub) {
    sub->add_option("--n-dis", cfg.n_dis, "samples per curve")->check(CLI::Range(2, 1000000));
    sub->add_option("--r", cfg.r, "extended radius in pixels")->check(CLI::PositiveNumber);
  };

  std::string input;
  std::string format;
  auto* fit = app.add_subcommand("fit", "fit labeled lane points with B-splines");
  fit->add_option("--input", input, "CULane .lines.txt, Tusimple .jsonl or {\"points\": ...} JSON")->required();
  fit->add_option("--format", format, "culane | tusimple | points (default: from extension)");
  fit->add_option("--n-control", cfg.n_control, "control points per lane");
  fit->add_option("--degree", cfg.degree, "B-spline degree");
  fit->add_option("--parameterization", cfg.parameterization, "chord_length | uniform");

  std::string curve_path;
  int n_samples = 0;
  auto* samp = app.add_subcommand("sample", "sample a curve at equal parameter steps");
  samp->add_option("--curve", curve_path, "curve JSON")->required();
  samp->add_option("--n", n_samples, "number of samples (default n_dis)");
  samp->add_option("--n-dis", cfg.n_dis, "samples per curve");

  std::string path_a;
  std::string path_b;
  auto* dist = app.add_subcommand("dist", "directed and symmetric curve distances");
  dist->add_option("--a", path_a, "curve or polyline JSON")->required();
  dist->add_option("--b", path_b, "curve or polyline JSON")->required();
  add_shared(dist);

  std::vector<double> confs;
  std::vector<int> targets;
  auto* loss = app.add_subcommand("loss", "loss terms between a ground truth and a prediction");
  loss->add_option("--gt", path_a, "ground-truth curve or polyline JSON")->required();
  loss->add_option("--pred", path_b, "predicted curve or polyline JSON")->required();
  loss->add_option("--conf", confs, "predicted confidence (repeatable; classification loss is the mean)");
  loss->add_option("--target", targets, "0 or 1 per --conf");
  loss->add_option("--lambda-reg", cfg.lambda_reg);
  loss->add_option("--lambda-length", cfg.lambda_length);
  loss->add_option("--lambda-start", cfg.lambda_start);
  loss->add_option("--lambda-cls", cfg.lambda_cls);
  loss->add_option("--alpha", cfg.focal_alpha, "focal loss alpha");
  loss->add_option("--gamma", cfg.focal_gamma, "focal loss gamma");
  add_shared(loss);

  auto* assign = app.add_subcommand("assign", "assign proposals to lanes by start point");
  assign->add_option("--starts", input, "JSON array of [x, y] start points")->required();
  assign->add_option("--n-p", cfg.n_p, "number of proposals");
  assign->add_option("--k", cfg.k, "proposals per lane");
  assign->add_option("--width", cfg.image_width, "image width");
  assign->add_option("--height", cfg.image_height, "image height");

  auto* nms = app.add_subcommand("nms", "Fast NMS over scored curves");
  nms->add_option("--input", input, "JSON array of {curve, confidence}")->required();
  nms->add_option("--nms-threshold", cfg.nms_threshold, "symmetric distance threshold in pixels");
  nms->add_option("--conf-threshold", cfg.conf_threshold, "minimum confidence");
  nms->add_option("--n-dis", cfg.n_dis, "samples per curve");

  double stroke_width = 0.0;
  std::string tag;
  auto* eval_culane = app.add_subcommand("eval-culane", "F1 with stroke-mask IoU matching");
  eval_culane->add_option("--pred", path_a, "prediction .lines.txt file or directory")->required();
  eval_culane->add_option("--gt", path_b, "ground-truth .lines.txt file or directory")->required();
  eval_culane->add_option("--iou-threshold", cfg.iou_threshold);
  eval_culane->add_option("--stroke-width", stroke_width, "lane stroke width (default scales 30 px at 1640 wide)");
  eval_culane->add_option("--width", cfg.image_width, "image width");
  eval_culane->add_option("--height", cfg.image_height, "image height");
  eval_culane->add_option("--tag", tag, "scenario tag copied to the output");

  auto* eval_tusimple = app.add_subcommand("eval-tusimple", "point accuracy with FP/FN rates");
  eval_tusimple->add_option("--pred", path_a, "prediction JSON lines")->required();
  eval_tusimple->add_option("--gt", path_b, "ground-truth JSON lines")->required();
  eval_tusimple->add_option("--x-tolerance", cfg.x_tolerance, "pixel tolerance per point");

  bool mirror = false;
  int bezier_cps = 4;
  int poly_degree = 3;
  std::string csv;
  auto* demo = app.add_subcommand("demo-locality", "one matched gradient step for three lane representations");
  demo->add_option("--offset-px", cfg.offset_px);
  demo->add_option("--step-size", cfg.step_size);
  demo->add_option("--steps", cfg.steps);
  demo->add_option("--n-control", cfg.n_control, "B-spline control points");
  demo->add_option("--degree", cfg.degree, "B-spline degree");
  demo->add_option("--bezier-control-points", bezier_cps);
  demo->add_option("--polynomial-degree", poly_degree);
  demo->add_flag("--mirror", mirror, "offset the lower half instead of the upper");
  demo->add_option("--csv", csv, "write per-step losses and displacements");
  add_shared(demo);

  std::string action;
  auto* config = app.add_subcommand("config", "print the effective configuration");
  config->add_option("action", action, "show")->required()->check(CLI::IsMember({"show"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Output o{out, pretty};
  try {
    if (fit->parsed()) {
      cmd_fit(cfg, input, format, o);
    } else if (samp->parsed()) {
      cmd_sample(curve_path, n_samples > 0 ? n_samples : cfg.n_dis, o);
    } else if (dist->parsed()) {
      cmd_dist(cfg, path_a, path_b, o);
    } else if (loss->parsed()) {
      cmd_loss(cfg, path_a, path_b, confs, targets, o);
    } else if (assign->parsed()) {
      cmd_assign(cfg, input, o);
    } else if (nms->parsed()) {
      cmd_nms(cfg, input, o);
    } else if (eval_culane->parsed()) {
      cmd_eval_culane(cfg, path_a, path_b, stroke_width, tag, o);
    } else if (eval_tusimple->parsed()) {
      cmd_eval_tusimple(cfg, path_a, path_b, o);
    } else if (demo->parsed()) {
      cmd_demo_locality(cfg, mirror, bezier_cps, poly_degree, csv, o);
    } else if (config->parsed()) {
      if (pretty) out << format_config(cfg);
      else {
        json j;
        std::istringstream lines(format_config(cfg));
        for (std::string line; std::getline(lines, line);) {
          const auto eq = line.find('=');
          const std::string key = line.substr(0, eq);
          const std::string value = line.substr(eq + 1);
          j[key] = key == "parameterization" ? json(value) : json::parse(value);
        }
        out << j.dump() << '\n';
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace lanecurve::cli
