#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrfoptics/angle.hpp"
#include "mrfoptics/bell_models.hpp"

namespace mrfoptics::cli {

enum class Experiment { bell, triphoton };
enum class ModelId { mrf1, mrf2, kqed, collapse, conjecture };
enum class SweepVar { theta_a, theta_b, theta_c, phi };

std::string to_string(Experiment e);
std::string to_string(ModelId m);
std::string to_string(SweepVar v);
std::optional<Experiment> parse_experiment(const std::string& s);
std::optional<ModelId> parse_model(const std::string& s);
std::optional<SweepVar> parse_sweep_var(const std::string& s);

bool model_supports(Experiment e, ModelId m);

struct SweepSpec {
  SweepVar var = SweepVar::theta_a;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

// One scan: fixed angles, one swept angle, and the models to evaluate.
// Angles are radians; `degrees_input` only records how the user typed them.
struct ScanRequest {
  Experiment experiment = Experiment::bell;
  std::vector<ModelId> models;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta_c = 0.0;
  SweepSpec sweep;
  double alpha = 1e-3;
  int grid_n = 720;
  double k = 0.5;
  bool degrees_input = false;
};

struct Metadata {
  std::string tool;
  std::string version;
  Experiment experiment = Experiment::bell;
  std::vector<std::string> models;
  double alpha = 1e-3;
  std::optional<int> grid_n;
  std::optional<double> k;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta_c = 0.0;
  std::optional<SweepSpec> sweep;
  bool degrees_input = false;
};

struct CurvePoint {
  double angle = 0.0;
  std::vector<double> rates;  // one per model, request order
  bool degenerate = false;
};

struct RateCurve {
  std::string swept_name;
  std::vector<std::string> model_names;
  std::vector<CurvePoint> points;  // sorted ascending by angle
  Metadata meta;
};

struct ReportRow {
  std::string label;  // swept angle (curve comparisons) or rate-field name (oracle)
  double a = 0.0;
  double b = 0.0;
  double abs_diff = 0.0;
};

struct ComparisonReport {
  std::string column_a;
  std::string column_b;
  std::vector<ReportRow> rows;
  double max_abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
  Metadata meta;
};

// Evaluates every requested model at every swept point.  Pure computation;
// nothing is written.  Usage problems (incompatible model and experiment,
// bad sweep) raise std::invalid_argument.
RateCurve run_scan(const ScanRequest& request);

// Per-point absolute differences between exactly two models over a shared
// sweep, with a pass/fail verdict against the tolerance.
ComparisonReport run_compare(const ScanRequest& request, double tolerance);

// Grid realization of the transparent MRF model against its analytic rates
// at one configuration.  Both sides are evaluated at the tunings snapped to
// the grid; the snap distance is recorded in the notes.  Only the
// transparent model has a grid factorization, so the request's model list
// must be {mrf1} (or empty).
ComparisonReport run_oracle(const ScanRequest& request, std::optional<double> tolerance);

}  // namespace mrfoptics::cli
