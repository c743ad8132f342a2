#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "lanecurve/dataset.hpp"
#include "lanecurve/json_io.hpp"

using namespace lanecurve;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(LANECURVE_FIXTURES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Tusimple, AbsentPointsDropped) {
  const auto empty = parse_tusimple_line(R"({"lanes": [[-2, -2]], "h_samples": [160, 170], "raw_file": "a.jpg"})");
  EXPECT_TRUE(empty.lanes.empty());
  EXPECT_EQ(empty.image_size.width, 1280);
  EXPECT_EQ(empty.image_size.height, 720);

  const auto one = parse_tusimple_line(R"({"lanes": [[100, 110]], "h_samples": [160, 170], "raw_file": "a.jpg"})");
  ASSERT_EQ(one.lanes.size(), 1u);
  EXPECT_EQ(one.lanes[0].raw_points, Polyline({{100, 160}, {110, 170}}));
  EXPECT_EQ(one.raw_file, "a.jpg");
}

TEST(Tusimple, Errors) {
  EXPECT_THROW(parse_tusimple_line("{not json"), DataError);
  EXPECT_THROW(parse_tusimple_line(R"({"lanes": [[1, 2, 3]], "h_samples": [160, 170], "raw_file": "a"})"), DataError);
  EXPECT_THROW(parse_tusimple_line(R"({"lanes": [], "h_samples": [160]})"), DataError);
}

TEST(Tusimple, SubmissionRoundTrip) {
  const auto records = parse_tusimple_file(fixture("tusimple_gt.jsonl"));
  ASSERT_EQ(records.size(), 2u);
  for (const auto& rec : records) {
    const Frame frame = parse_tusimple_line(to_tusimple_json(rec));
    TusimpleRecord back{{}, frame.h_samples, frame.raw_file, std::nullopt};
    for (const auto& lane : frame.lanes) back.lanes.push_back(lane_to_row_lane(lane.raw_points, frame.h_samples));
    const auto again = parse_tusimple_record(to_tusimple_json(back));
    EXPECT_EQ(to_tusimple_json(again), to_tusimple_json(back));
    ASSERT_EQ(back.lanes.size(), rec.lanes.size());
    for (std::size_t i = 0; i < rec.lanes.size(); ++i) EXPECT_EQ(back.lanes[i], rec.lanes[i]);
  }
}

TEST(Tusimple, RowLaneInterpolates) {
  const Polyline lane({{100, 200}, {120, 220}});
  const auto row = lane_to_row_lane(lane, {190, 200, 210, 220, 230});
  EXPECT_EQ(row, (RowLane{-2, 100, 110, 120, -2}));
}

TEST(Culane, ParseBasics) {
  EXPECT_TRUE(parse_culane_lines("").empty());
  const auto one = parse_culane_lines("10.0 590 20.0 580\n");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], Polyline({{10, 590}, {20, 580}}));
  EXPECT_THROW(parse_culane_lines("10 590 20\n"), DataError);
  EXPECT_THROW(parse_culane_lines("10 590 abc 580\n"), DataError);
}

TEST(Culane, FourLaneFixture) {
  const auto lanes = parse_culane_lines(fixture("frame.lines.txt"));
  ASSERT_EQ(lanes.size(), 4u);
  for (const auto& l : lanes) EXPECT_EQ(l.size(), 10u);
  EXPECT_EQ(lanes[0][0], (Point2{420, 590}));
  EXPECT_EQ(lanes[1][1], (Point2{752.45, 560}));
  EXPECT_EQ(lanes[3][9], (Point2{1566.78, 320}));
  EXPECT_EQ(parse_culane_lines(to_culane_lines(lanes)), lanes);
}

TEST(Culane, FrameClipsAndCanonicalizes) {
  const Frame f = frame_from_culane("-5 600 10 590 20 580 30 570\n1700 100 1800 50\n", "x.lines.txt", "crowd");
  ASSERT_EQ(f.lanes.size(), 1u);
  EXPECT_EQ(f.lanes[0].raw_points, Polyline({{30, 570}, {20, 580}, {10, 590}}));
  EXPECT_EQ(f.scenario_tag, "crowd");
  EXPECT_EQ(f.lanes[0].source_file, "x.lines.txt");
}

TEST(Canonical, Idempotent) {
  const Polyline p({{3, 5}, {1, 2}, {4, 9}, {0, 2}});
  const auto c = canonicalize(p);
  EXPECT_EQ(canonicalize(c), c);
  EXPECT_EQ(c, Polyline({{1, 2}, {0, 2}, {3, 5}, {4, 9}}));
  EXPECT_EQ(lane_start(c), (Point2{4, 9}));
  EXPECT_EQ(bottom_to_top(c).front(), (Point2{4, 9}));
}

TEST(GroundTruth, StraightLaneFitsExactly) {
  std::vector<Point2> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({300.0 + 2.0 * i, 200.0 + 19.0 * i});
  Frame f;
  f.lanes.push_back({Polyline(pts), {}, {}, false, {}, {}});
  const Frame g = build_ground_truth(f);
  ASSERT_TRUE(g.lanes[0].fitted.has_value());
  EXPECT_LT(*g.lanes[0].fit_rms, 1e-6);
  EXPECT_EQ(g.lanes[0].raw_points, f.lanes[0].raw_points);
  EXPECT_NEAR(g.lanes[0].fitted->control_points().front().x, 338.0, 1e-9);
  EXPECT_NEAR(g.lanes[0].fitted->control_points().front().y, 561.0, 1e-9);
}

TEST(GroundTruth, SinusoidRows) {
  std::vector<Point2> pts;
  for (int r = 0; r < 48; ++r) {
    const double y = 240.0 + 10.0 * r;
    pts.push_back({640.0 + 0.4 * (710.0 - y) + 25.0 * std::sin(y / 80.0), y});
  }
  Frame f;
  f.lanes.push_back({Polyline(pts), {}, {}, false, {}, {}});
  const Frame g = build_ground_truth(f);
  ASSERT_TRUE(g.lanes[0].fit_rms.has_value());
  EXPECT_LT(*g.lanes[0].fit_rms, 1.0);
  EXPECT_FALSE(g.lanes[0].reduced_fit);
}

TEST(GroundTruth, ShortLaneIsReducedAndFlagged) {
  Frame f;
  f.lanes.push_back({Polyline({{10, 500}, {20, 520}, {35, 540}}), {}, {}, false, {}, {}});
  const Frame g = build_ground_truth(f);
  ASSERT_TRUE(g.lanes[0].fitted.has_value());
  EXPECT_TRUE(g.lanes[0].reduced_fit);
  EXPECT_EQ(g.lanes[0].fitted->control_points().size(), 3u);
  EXPECT_EQ(g.lanes[0].fitted->degree(), 2);
  EXPECT_FALSE(g.lanes[0].fit_note.empty());
}

TEST(Json, CurveRoundTripIsBitExact) {
  const BSplineCurve c(3, {{0.1, 1.0 / 3.0}, {2.0 / 7.0, 5.5}, {1e-17, 3.0}, {9.999999999999999, 4.0}, {5, 6}});
  const auto text = to_json(c).dump();
  const auto back = bspline_from_json(json::parse(text));
  EXPECT_EQ(back, c);
  EXPECT_EQ(to_json(back).dump(), text);
}

TEST(Json, ParseErrorsAreDataErrors) {
  EXPECT_THROW(bspline_from_json(json::parse(R"({"degree": 3})")), DataError);
  EXPECT_THROW(bspline_from_json(json::parse(R"({"degree": 3, "control_points": [[0, 0], [1, 1]]})")), DataError);
  EXPECT_THROW(polyline_from_json(json::parse(R"({"points": [[0, "a"], [1, 1]]})")), DataError);
  EXPECT_THROW(scored_curve_from_json(json::parse(R"({"confidence": 0.3})")), DataError);
}
