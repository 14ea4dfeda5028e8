#include <doctest.h>

#include "mrfoptics/scan.hpp"

using namespace mrfoptics;
using namespace mrfoptics::cli;

namespace {

ScanRequest bell_request(std::vector<ModelId> models, SweepSpec sweep) {
  ScanRequest r;
  r.experiment = Experiment::bell;
  r.models = std::move(models);
  r.sweep = sweep;
  return r;
}

}  // namespace

TEST_CASE("scan evaluates the quantum curve at the expected points") {
  const double eps = 1e-6;
  ScanRequest request = bell_request({ModelId::kqed}, {SweepVar::phi, 0.0, kPi - eps, 5});
  const RateCurve curve = run_scan(request);

  REQUIRE(curve.points.size() == 5);
  CHECK(curve.swept_name == "phi");
  CHECK(curve.points[0].rates[0] == doctest::Approx(0.5));
  CHECK(curve.points[1].rates[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(curve.points[2].rates[0] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(curve.points[3].rates[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(curve.points[4].rates[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(curve.points[0].degenerate);   // phi = 0
  CHECK_FALSE(curve.points[1].degenerate);

  // points arrive sorted by angle
  for (size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].angle > curve.points[i - 1].angle);
  }
}

TEST_CASE("scan covers the triphoton models") {
  ScanRequest request;
  request.experiment = Experiment::triphoton;
  request.models = {ModelId::collapse};
  request.theta_a = 0.0;
  request.theta_b = 0.0;
  request.sweep = {SweepVar::theta_c, 0.0, kHalfPi, 3};
  const RateCurve curve = run_scan(request);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].rates[0] == doctest::Approx(0.0));
  CHECK(curve.points[1].rates[0] == doctest::Approx(0.25));
  CHECK(curve.points[2].rates[0] == doctest::Approx(0.5));
}

TEST_CASE("mrf and kqed columns agree on any sweep") {
  ScanRequest request =
      bell_request({ModelId::mrf1, ModelId::mrf2, ModelId::kqed}, {SweepVar::theta_a, 0.01, 3.1, 40});
  request.theta_b = 0.4;
  const RateCurve curve = run_scan(request);
  for (const CurvePoint& p : curve.points) {
    CHECK(std::abs(p.rates[0] - p.rates[2]) <= 1e-12);
    CHECK(std::abs(p.rates[1] - p.rates[2]) <= 1e-12);
    for (double r : p.rates) {
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
    }
  }
}

TEST_CASE("scan validates its request") {
  SUBCASE("incompatible model and experiment") {
    CHECK_THROWS_AS(run_scan(bell_request({ModelId::collapse}, {SweepVar::theta_a, 0, 1, 5})),
                    std::invalid_argument);
  }
  SUBCASE("bad sweep counts and ranges") {
    CHECK_THROWS_AS(run_scan(bell_request({ModelId::kqed}, {SweepVar::theta_a, 0, 1, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_scan(bell_request({ModelId::kqed}, {SweepVar::theta_a, 0.5, 0.2, 5})),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_scan(bell_request({ModelId::kqed}, {SweepVar::theta_a, 0, kPi + 0.1, 5})),
                    std::invalid_argument);
  }
  SUBCASE("wrong sweep variable for the experiment") {
    CHECK_THROWS_AS(run_scan(bell_request({ModelId::kqed}, {SweepVar::theta_c, 0, 1, 5})),
                    std::invalid_argument);
    ScanRequest tri;
    tri.experiment = Experiment::triphoton;
    tri.models = {ModelId::collapse};
    tri.sweep = {SweepVar::phi, 0, 1, 5};
    CHECK_THROWS_AS(run_scan(tri), std::invalid_argument);
  }
  SUBCASE("duplicate models") {
    CHECK_THROWS_AS(
        run_scan(bell_request({ModelId::kqed, ModelId::kqed}, {SweepVar::theta_a, 0, 1, 5})),
        std::invalid_argument);
  }
}

TEST_CASE("compare reports the per-point differences") {
  SUBCASE("equivalent models pass a tight tolerance") {
    ScanRequest request =
        bell_request({ModelId::mrf2, ModelId::kqed}, {SweepVar::theta_a, 0.05, 3.0, 25});
    const ComparisonReport report = run_compare(request, 1e-9);
    CHECK(report.pass);
    CHECK(report.max_abs_diff <= 1e-12);
    CHECK(report.rows.size() == 25);
  }
  SUBCASE("a model against itself is exactly zero") {
    ScanRequest request =
        bell_request({ModelId::kqed, ModelId::kqed}, {SweepVar::theta_a, 0.05, 3.0, 10});
    const ComparisonReport report = run_compare(request, 1e-9);
    CHECK(report.max_abs_diff == 0.0);
    CHECK(report.pass);
  }
  SUBCASE("collapse vs conjecture fails a loose tolerance") {
    ScanRequest request;
    request.experiment = Experiment::triphoton;
    request.models = {ModelId::collapse, ModelId::conjecture};
    request.theta_a = 0.0;
    request.theta_b = 0.0;
    request.k = 0.5;
    request.sweep = {SweepVar::theta_c, 0.0, kHalfPi, 21};
    const ComparisonReport report = run_compare(request, 1e-2);
    CHECK_FALSE(report.pass);
    CHECK(report.max_abs_diff >= 0.4);
  }
  SUBCASE("exactly two models are required") {
    CHECK_THROWS_AS(run_compare(bell_request({ModelId::kqed}, {SweepVar::theta_a, 0, 1, 5}), 1e-3),
                    std::invalid_argument);
  }
}

TEST_CASE("oracle compares the grid against the analytic rates") {
  ScanRequest request;
  request.experiment = Experiment::bell;
  request.models = {ModelId::mrf1};
  request.theta_a = kPi / 4;
  request.theta_b = 0.0;
  request.alpha = 1e-3;
  request.grid_n = 360;

  const ComparisonReport report = run_oracle(request, std::nullopt);
  CHECK(report.pass);
  CHECK(report.rows.size() == 4);
  CHECK(report.rows[0].label == "coincidence");
  CHECK(report.max_abs_diff < 1e-3);
  CHECK(report.meta.grid_n.has_value());

  SUBCASE("other models have no grid factorization") {
    request.models = {ModelId::mrf2};
    CHECK_THROWS_AS(run_oracle(request, std::nullopt), std::invalid_argument);
  }
  SUBCASE("off-grid tunings are snapped and noted") {
    request.models = {ModelId::mrf1};
    request.theta_a = kPi / 4 + 0.3 * (kPi / 360);
    const ComparisonReport snapped = run_oracle(request, std::nullopt);
    REQUIRE(!snapped.notes.empty());
    CHECK(snapped.notes[0].find("snap") != std::string::npos);
    CHECK(snapped.pass);
  }
  SUBCASE("a coarse grid widens the tolerance with a warning") {
    request.models = {ModelId::mrf1};
    request.grid_n = 4;
    request.theta_a = kPi / 4;
    const ComparisonReport coarse = run_oracle(request, std::nullopt);
    CHECK(coarse.tolerance >= kPi / 4 - 1e-12);
    bool warned = false;
    for (const auto& note : coarse.notes) {
      if (note.find("coarse") != std::string::npos) warned = true;
    }
    CHECK(warned);
  }
  SUBCASE("tunings that snap together are a degenerate-input error") {
    request.models = {ModelId::mrf1};
    request.grid_n = 360;
    request.theta_a = 0.2 * (kPi / 360);
    request.theta_b = 0.0;
    CHECK_THROWS_AS(run_oracle(request, std::nullopt), DegenerateAnglesError);
  }
}
