#include "mrfoptics/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "mrfoptics/triphoton.hpp"
#include "mrfoptics/version.hpp"

namespace mrfoptics::cli {

std::string to_string(Experiment e) {
  return e == Experiment::bell ? "bell" : "triphoton";
}

std::string to_string(ModelId m) {
  switch (m) {
    case ModelId::mrf1: return "mrf1";
    case ModelId::mrf2: return "mrf2";
    case ModelId::kqed: return "kqed";
    case ModelId::collapse: return "collapse";
    case ModelId::conjecture: return "conjecture";
  }
  return "?";
}

std::string to_string(SweepVar v) {
  switch (v) {
    case SweepVar::theta_a: return "theta_a";
    case SweepVar::theta_b: return "theta_b";
    case SweepVar::theta_c: return "theta_c";
    case SweepVar::phi: return "phi";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(const std::string& s) {
  if (s == "bell") return Experiment::bell;
  if (s == "triphoton") return Experiment::triphoton;
  return std::nullopt;
}

std::optional<ModelId> parse_model(const std::string& s) {
  if (s == "mrf1") return ModelId::mrf1;
  if (s == "mrf2") return ModelId::mrf2;
  if (s == "kqed") return ModelId::kqed;
  if (s == "collapse") return ModelId::collapse;
  if (s == "conjecture") return ModelId::conjecture;
  return std::nullopt;
}

std::optional<SweepVar> parse_sweep_var(const std::string& s) {
  if (s == "theta_a" || s == "theta-a") return SweepVar::theta_a;
  if (s == "theta_b" || s == "theta-b") return SweepVar::theta_b;
  if (s == "theta_c" || s == "theta-c") return SweepVar::theta_c;
  if (s == "phi") return SweepVar::phi;
  return std::nullopt;
}

bool model_supports(Experiment e, ModelId m) {
  if (e == Experiment::bell) {
    return m == ModelId::mrf1 || m == ModelId::mrf2 || m == ModelId::kqed;
  }
  return m == ModelId::collapse || m == ModelId::conjecture;
}

namespace {

std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void validate_request(const ScanRequest& request, bool needs_sweep) {
  if (request.models.empty()) {
    throw std::invalid_argument("no models requested");
  }
  std::set<ModelId> seen;
  for (ModelId m : request.models) {
    if (!model_supports(request.experiment, m)) {
      throw std::invalid_argument("model '" + to_string(m) + "' is not defined for the '" +
                                  to_string(request.experiment) + "' experiment");
    }
    if (!seen.insert(m).second) {
      throw std::invalid_argument("model '" + to_string(m) + "' listed twice");
    }
  }
  if (needs_sweep) {
    const SweepSpec& s = request.sweep;
    if (s.count < 2) throw std::invalid_argument("sweep count must be >= 2");
    if (!(s.start >= 0.0 && s.stop < kPi && s.start < s.stop)) {
      throw std::invalid_argument("sweep range must satisfy 0 <= start < stop < pi");
    }
    if (request.experiment == Experiment::bell && s.var == SweepVar::theta_c) {
      throw std::invalid_argument("the bell experiment has no theta_c to sweep");
    }
    if (request.experiment == Experiment::triphoton && s.var == SweepVar::phi) {
      throw std::invalid_argument("sweep variable 'phi' applies to the bell experiment only");
    }
  }
  if (!(request.alpha > 0.0 && request.alpha <= 0.1)) {
    throw std::invalid_argument("alpha must lie in (0, 0.1]");
  }
  if (!(request.k > 0.0)) {
    throw std::invalid_argument("k must be > 0");
  }
}

Metadata make_metadata(const ScanRequest& request, bool with_sweep) {
  Metadata meta;
  meta.tool = kToolName;
  meta.version = kToolVersion;
  meta.experiment = request.experiment;
  for (ModelId m : request.models) meta.models.push_back(to_string(m));
  meta.alpha = request.alpha;
  meta.theta_a = request.theta_a;
  meta.theta_b = request.theta_b;
  meta.theta_c = request.theta_c;
  if (with_sweep) meta.sweep = request.sweep;
  meta.degrees_input = request.degrees_input;
  for (ModelId m : request.models) {
    if (m == ModelId::conjecture) meta.k = request.k;
  }
  return meta;
}

bell::Model to_bell_model(ModelId m) {
  switch (m) {
    case ModelId::mrf1: return bell::Model::mrf1;
    case ModelId::mrf2: return bell::Model::mrf2;
    default: return bell::Model::kqed;
  }
}

struct PointValue {
  double rate = 0.0;
  bool degenerate = false;
};

PointValue evaluate_model(const ScanRequest& request, ModelId model, double theta_a,
                          double theta_b, double theta_c) {
  PointValue out;
  if (request.experiment == Experiment::bell) {
    const bell::BellConfig config(Angle(theta_a), Angle(theta_b), to_bell_model(model),
                                  request.alpha);
    const bell::BellRates rates = bell::bell_rates(config);
    out.rate = rates.coincidence;
    out.degenerate = rates.degenerate;
  } else if (model == ModelId::collapse) {
    out.rate = triphoton::triple_rate_collapse(Angle(theta_a), Angle(theta_b), Angle(theta_c));
  } else {
    out.rate = triphoton::conjectured_mrf_triple_rate(Angle(theta_a), Angle(theta_b),
                                                      Angle(theta_c), request.k);
  }
  if (!(out.rate >= -1e-12 && out.rate <= 1.0 + 1e-12)) {
    throw std::logic_error("rate outside [0, 1]: " + std::to_string(out.rate));
  }
  out.rate = std::clamp(out.rate, 0.0, 1.0);
  return out;
}

}  // namespace

RateCurve run_scan(const ScanRequest& request) {
  validate_request(request, /*needs_sweep=*/true);

  RateCurve curve;
  curve.swept_name = to_string(request.sweep.var);
  for (ModelId m : request.models) curve.model_names.push_back(to_string(m));
  curve.meta = make_metadata(request, /*with_sweep=*/true);

  const SweepSpec& sweep = request.sweep;
  const double step = (sweep.stop - sweep.start) / (sweep.count - 1);
  for (int i = 0; i < sweep.count; ++i) {
    const double swept = sweep.start + i * step;
    double theta_a = request.theta_a;
    double theta_b = request.theta_b;
    double theta_c = request.theta_c;
    switch (sweep.var) {
      case SweepVar::theta_a: theta_a = swept; break;
      case SweepVar::theta_b: theta_b = swept; break;
      case SweepVar::theta_c: theta_c = swept; break;
      case SweepVar::phi:  // sweep the tuning difference directly
        theta_a = swept;
        theta_b = 0.0;
        break;
    }
    CurvePoint point;
    point.angle = swept;
    for (ModelId m : request.models) {
      const PointValue v = evaluate_model(request, m, theta_a, theta_b, theta_c);
      point.rates.push_back(v.rate);
      point.degenerate = point.degenerate || v.degenerate;
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

ComparisonReport run_compare(const ScanRequest& request, double tolerance) {
  if (request.models.size() != 2) {
    throw std::invalid_argument("compare needs exactly two models");
  }
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be >= 0");
  }
  // evaluate the two columns separately so a model may be compared with
  // itself
  ScanRequest single = request;
  single.models = {request.models[0]};
  const RateCurve curve_a = run_scan(single);
  single.models = {request.models[1]};
  const RateCurve curve_b = run_scan(single);

  ComparisonReport report;
  report.column_a = to_string(request.models[0]);
  report.column_b = to_string(request.models[1]);
  report.tolerance = tolerance;
  report.meta = make_metadata(request, /*with_sweep=*/true);
  for (size_t i = 0; i < curve_a.points.size(); ++i) {
    ReportRow row;
    row.label = format_angle(curve_a.points[i].angle);
    row.a = curve_a.points[i].rates[0];
    row.b = curve_b.points[i].rates[0];
    row.abs_diff = std::abs(row.a - row.b);
    report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
    report.rows.push_back(std::move(row));
  }
  report.pass = report.max_abs_diff <= tolerance;
  return report;
}

ComparisonReport run_oracle(const ScanRequest& request, std::optional<double> tolerance) {
  if (request.experiment != Experiment::bell) {
    throw std::invalid_argument("the grid oracle applies to the bell experiment");
  }
  if (!request.models.empty() &&
      !(request.models.size() == 1 && request.models[0] == ModelId::mrf1)) {
    throw std::invalid_argument(
        "only the transparent model (mrf1) has a grid factorization; "
        "check mrf2/kqed against mrf1 with the compare command instead");
  }
  if (request.grid_n < 4 || request.grid_n % 2 != 0) {
    throw std::invalid_argument("grid n must be an even integer >= 4");
  }

  const bell::BellConfig config(Angle(request.theta_a), Angle(request.theta_b),
                                bell::Model::mrf1, request.alpha);
  const bell::BellGridOracle oracle = bell::build_bell_grid_mrf1(config, request.grid_n);

  const bell::BellConfig snapped(oracle.theta_a_snapped, oracle.theta_b_snapped,
                                 bell::Model::mrf1, request.alpha);
  const bell::BellRates analytic = bell::bell_rates(snapped);
  if (analytic.degenerate) {
    throw DegenerateAnglesError(
        "tunings snap to equal or orthogonal grid bins; the analytic subsets coincide");
  }
  const bell::GridFieldResult grid = bell::grid_field_probabilities(oracle);

  ComparisonReport report;
  report.column_a = "analytic";
  report.column_b = "grid";
  report.meta = make_metadata(
      [&] {
        ScanRequest r = request;
        if (r.models.empty()) r.models = {ModelId::mrf1};
        return r;
      }(),
      /*with_sweep=*/false);
  report.meta.grid_n = request.grid_n;

  const std::array<std::pair<const char*, double>, 4> fields = {
      std::pair{"coincidence", analytic.coincidence},
      std::pair{"klyshko_absorb", analytic.klyshko_absorb},
      std::pair{"anti_double_absorb", analytic.anti_double_absorb},
      std::pair{"anti_single", analytic.anti_single}};
  for (int i = 0; i < 4; ++i) {
    ReportRow row;
    row.label = fields[i].first;
    row.a = fields[i].second;
    row.b = grid.probabilities[i];
    row.abs_diff = std::abs(row.a - row.b);
    report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
    report.rows.push_back(std::move(row));
  }

  double tol = std::max(tolerance.value_or(1e-3), request.alpha);
  if (oracle.snap_distance > 0.0) {
    report.notes.push_back("tunings snapped to grid bins; total snap distance " +
                           format_angle(oracle.snap_distance) + " rad");
    tol = std::max(tol, oracle.snap_distance);
  }
  if (request.grid_n < 16) {
    report.notes.push_back("coarse grid (n < 16): tolerance widened to one grid step");
    tol = std::max(tol, kPi / request.grid_n);
  }
  report.tolerance = tol;
  report.pass = report.max_abs_diff <= tol;
  return report;
}

}  // namespace mrfoptics::cli
