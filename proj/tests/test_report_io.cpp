#include <doctest.h>

#include <sstream>

#include "mrfoptics/report_io.hpp"

using namespace mrfoptics;
using namespace mrfoptics::cli;

namespace {

RateCurve sample_curve() {
  ScanRequest request;
  request.experiment = Experiment::bell;
  request.models = {ModelId::kqed};
  request.sweep = {SweepVar::phi, 0.1, 1.3, 3};
  return run_scan(request);
}

}  // namespace

TEST_CASE("csv has one header line plus one row per point") {
  const RateCurve curve = sample_curve();
  const std::string csv = curve_to_csv(curve);

  int lines = 0;
  std::istringstream in(csv);
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    if (lines == 0) header = line;
    ++lines;
  }
  CHECK(lines == 4);
  CHECK(header == "angle_rad,kqed");
  CHECK(csv.back() == '\n');
  CHECK(csv.find('\r') == std::string::npos);  // LF only
}

TEST_CASE("identical requests produce byte-identical exports") {
  const RateCurve a = sample_curve();
  const RateCurve b = sample_curve();
  CHECK(curve_to_csv(a) == curve_to_csv(b));
  CHECK(curve_to_json(a) == curve_to_json(b));
}

TEST_CASE("json round-trip reproduces every number exactly") {
  const RateCurve curve = sample_curve();
  const ParsedFile parsed = parse_json_file(curve_to_json(curve));
  const auto* round = std::get_if<RateCurve>(&parsed);
  REQUIRE(round != nullptr);
  REQUIRE(round->points.size() == curve.points.size());
  for (size_t i = 0; i < curve.points.size(); ++i) {
    CHECK(round->points[i].angle == curve.points[i].angle);  // bitwise equality
    CHECK(round->points[i].rates[0] == curve.points[i].rates[0]);
    CHECK(round->points[i].degenerate == curve.points[i].degenerate);
  }
  CHECK(round->meta.alpha == curve.meta.alpha);
  CHECK(round->meta.models == curve.meta.models);

  // a second export of the parsed curve is byte-identical
  CHECK(curve_to_json(*round) == curve_to_json(curve));
}

TEST_CASE("reports serialize with their verdict and notes") {
  ScanRequest request;
  request.experiment = Experiment::triphoton;
  request.models = {ModelId::collapse, ModelId::conjecture};
  request.sweep = {SweepVar::theta_c, 0.0, kHalfPi, 5};
  const ComparisonReport report = run_compare(request, 1e-2);

  const std::string json = report_to_json(report);
  const ParsedFile parsed = parse_json_file(json);
  const auto* round = std::get_if<ComparisonReport>(&parsed);
  REQUIRE(round != nullptr);
  CHECK(round->pass == report.pass);
  CHECK(round->max_abs_diff == report.max_abs_diff);
  CHECK(round->rows.size() == report.rows.size());
  CHECK(round->meta.k.has_value());

  const std::string csv = report_to_csv(report);
  CHECK(csv.rfind("label,collapse,conjecture,abs_diff\n", 0) == 0);
}

TEST_CASE("metadata records enough to re-run the command") {
  const RateCurve curve = sample_curve();
  CHECK(curve.meta.tool == "mrfoptics");
  CHECK_FALSE(curve.meta.version.empty());
  CHECK(curve.meta.alpha == doctest::Approx(1e-3));
  REQUIRE(curve.meta.sweep.has_value());
  CHECK(curve.meta.sweep->count == 3);
  CHECK(curve.meta.models == std::vector<std::string>{"kqed"});
}

TEST_CASE("malformed input raises a data error") {
  CHECK_THROWS_AS(parse_json_file("{ not json"), DataError);
  CHECK_THROWS_AS(parse_json_file("{\"kind\": \"mystery\"}"), DataError);
  CHECK_THROWS_AS(parse_json_file("{\"kind\": \"rate_curve\"}"), DataError);
}

TEST_CASE("file i/o failures raise io errors") {
  CHECK_THROWS_AS(write_file("/nonexistent_dir_zz/q.csv", "x"), IoError);
  CHECK_THROWS_AS(read_file("/nonexistent_dir_zz/q.csv"), IoError);
}
