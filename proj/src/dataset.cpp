#include "lanecurve/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace lanecurve {

namespace {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Integral values as JSON integers, so label files keep their native form.
json number_json(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
  return v;
}

bool inside(Point2 p, Canvas c) { return p.x >= 0.0 && p.y >= 0.0 && p.x <= c.width && p.y <= c.height; }

}  // namespace

Polyline canonicalize(const Polyline& lane) {
  std::vector<Point2> pts = lane.vec();
  std::stable_sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.y < b.y; });
  return Polyline(std::move(pts));
}

Polyline bottom_to_top(const Polyline& lane) {
  std::vector<Point2> pts = canonicalize(lane).vec();
  std::reverse(pts.begin(), pts.end());
  return Polyline(std::move(pts));
}

Point2 lane_start(const Polyline& lane) { return lane.back().y > lane.front().y ? lane.back() : lane.front(); }

TusimpleRecord parse_tusimple_record(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed Tusimple JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lanes") || !j.contains("h_samples") || !j.contains("raw_file"))
    throw DataError("Tusimple record needs lanes, h_samples and raw_file");
  TusimpleRecord rec;
  try {
    rec.h_samples = j.at("h_samples").get<std::vector<double>>();
    rec.lanes = j.at("lanes").get<std::vector<RowLane>>();
    rec.raw_file = j.at("raw_file").get<std::string>();
    if (j.contains("run_time") && !j.at("run_time").is_null()) rec.run_time = j.at("run_time").get<double>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad Tusimple field: ") + e.what());
  }
  for (const auto& lane : rec.lanes) {
    if (lane.size() != rec.h_samples.size())
      throw DataError("Tusimple lane has " + std::to_string(lane.size()) + " entries for " +
                      std::to_string(rec.h_samples.size()) + " h_samples");
  }
  return rec;
}

std::string to_tusimple_json(const TusimpleRecord& record) {
  json lanes = json::array();
  for (const auto& lane : record.lanes) {
    json row = json::array();
    for (double x : lane) row.push_back(number_json(x));
    lanes.push_back(std::move(row));
  }
  json rows = json::array();
  for (double h : record.h_samples) rows.push_back(number_json(h));
  json j{{"lanes", std::move(lanes)}, {"h_samples", std::move(rows)}, {"raw_file", record.raw_file}};
  if (record.run_time) j["run_time"] = number_json(*record.run_time);
  return j.dump();
}

std::vector<TusimpleRecord> parse_tusimple_file(std::string_view text) {
  std::vector<TusimpleRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(parse_tusimple_record(line));
    pos = end + 1;
  }
  return out;
}

Frame parse_tusimple_line(std::string_view json_text) {
  const TusimpleRecord rec = parse_tusimple_record(json_text);
  Frame frame;
  frame.image_size = kTusimpleCanvas;
  frame.raw_file = rec.raw_file;
  frame.h_samples = rec.h_samples;
  for (const auto& lane : rec.lanes) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < lane.size(); ++i)
      if (lane[i] >= 0.0) pts.push_back({lane[i], rec.h_samples[i]});
    if (pts.size() < 2) continue;
    frame.lanes.push_back(LaneAnnotation{canonicalize(Polyline(std::move(pts))), {}, {}, false, {}, rec.raw_file});
  }
  return frame;
}

RowLane lane_to_row_lane(const Polyline& lane, const std::vector<double>& h_samples) {
  const Polyline sorted = canonicalize(lane);
  const auto pts = sorted.points();
  RowLane out;
  out.reserve(h_samples.size());
  for (double h : h_samples) {
    double x = -2.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Point2 a = pts[i];
      const Point2 b = pts[i + 1];
      if (h == a.y) {
        x = a.x;
        break;
      }
      if (h == b.y) {
        x = b.x;
        break;
      }
      if (a.y < h && h < b.y) {
        x = a.x + (h - a.y) / (b.y - a.y) * (b.x - a.x);
        break;
      }
    }
    out.push_back(x);
  }
  return out;
}

std::vector<Polyline> parse_culane_lines(std::string_view text) {
  std::vector<Polyline> lanes;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::vector<double> values;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      double v = 0.0;
      const auto res = std::from_chars(line.data() + i, line.data() + j, v);
      if (res.ec != std::errc() || res.ptr != line.data() + j || !std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) + ": non-numeric token '" +
                        std::string(line.substr(i, j - i)) + "'");
      values.push_back(v);
      i = j;
    }
    if (values.empty()) continue;
    if (values.size() % 2 != 0) throw DataError("line " + std::to_string(line_no) + ": odd number of coordinates");
    if (values.size() < 4) throw DataError("line " + std::to_string(line_no) + ": lane needs at least 2 points");
    std::vector<Point2> pts;
    for (std::size_t k = 0; k < values.size(); k += 2) pts.push_back({values[k], values[k + 1]});
    lanes.emplace_back(std::move(pts));
  }
  return lanes;
}

std::string to_culane_lines(const std::vector<Polyline>& lanes) {
  std::string out;
  for (const auto& lane : lanes) {
    bool first = true;
    for (const auto& p : lane.points()) {
      if (!first) out += ' ';
      out += format_number(p.x);
      out += ' ';
      out += format_number(p.y);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Frame frame_from_culane(std::string_view text, std::string source_file, std::optional<std::string> scenario_tag) {
  Frame frame;
  frame.image_size = kCulaneCanvas;
  frame.scenario_tag = std::move(scenario_tag);
  frame.raw_file = source_file;
  for (const auto& lane : parse_culane_lines(text)) {
    std::vector<Point2> kept;
    for (const auto& p : lane.points())
      if (inside(p, frame.image_size)) kept.push_back(p);
    if (kept.size() < 2) continue;
    frame.lanes.push_back(LaneAnnotation{canonicalize(Polyline(std::move(kept))), {}, {}, false, {}, source_file});
  }
  return frame;
}

Frame build_ground_truth(const Frame& frame, const FitConfig& cfg) {
  cfg.validate();
  Frame out = frame;
  for (auto& lane : out.lanes) {
    const Polyline pts = bottom_to_top(lane.raw_points);
    FitConfig lane_cfg = cfg;
    const int count = static_cast<int>(pts.size());
    if (count < cfg.n_control) {
      lane_cfg.n_control = count;
      lane_cfg.degree = std::min(cfg.degree, count - 1);
      lane.reduced_fit = true;
      std::ostringstream note;
      note << "reduced fit: " << count << " points, " << lane_cfg.n_control << " control points, degree "
           << lane_cfg.degree;
      lane.fit_note = note.str();
    }
    try {
      FitReport fit = fit_bspline_least_squares(pts, lane_cfg);
      lane.fit_rms = fit.rms_error;
      lane.fitted = std::move(fit.curve);
    } catch (const FitError& e) {
      lane.fitted.reset();
      lane.fit_rms.reset();
      lane.fit_note = e.what();
    }
  }
  return out;
}

}  // namespace lanecurve
