#include "mrfoptics/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mrfoptics/errors.hpp"

namespace mrfoptics::cli {

using ordered_json = nlohmann::ordered_json;

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  return std::nullopt;
}

namespace {

std::string num15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

ordered_json metadata_to_json(const Metadata& meta) {
  ordered_json j;
  j["tool"] = meta.tool;
  j["version"] = meta.version;
  j["experiment"] = to_string(meta.experiment);
  j["models"] = meta.models;
  j["alpha"] = meta.alpha;
  j["grid_n"] = meta.grid_n ? ordered_json(*meta.grid_n) : ordered_json(nullptr);
  j["k"] = meta.k ? ordered_json(*meta.k) : ordered_json(nullptr);
  j["theta_a"] = meta.theta_a;
  j["theta_b"] = meta.theta_b;
  j["theta_c"] = meta.theta_c;
  if (meta.sweep) {
    ordered_json s;
    s["var"] = to_string(meta.sweep->var);
    s["start"] = meta.sweep->start;
    s["stop"] = meta.sweep->stop;
    s["count"] = meta.sweep->count;
    j["sweep"] = s;
  } else {
    j["sweep"] = nullptr;
  }
  j["degrees_input"] = meta.degrees_input;
  return j;
}

Metadata metadata_from_json(const ordered_json& j) {
  Metadata meta;
  meta.tool = j.at("tool").get<std::string>();
  meta.version = j.at("version").get<std::string>();
  const auto experiment = parse_experiment(j.at("experiment").get<std::string>());
  if (!experiment) throw DataError("metadata: unknown experiment");
  meta.experiment = *experiment;
  meta.models = j.at("models").get<std::vector<std::string>>();
  meta.alpha = j.at("alpha").get<double>();
  if (!j.at("grid_n").is_null()) meta.grid_n = j.at("grid_n").get<int>();
  if (!j.at("k").is_null()) meta.k = j.at("k").get<double>();
  meta.theta_a = j.at("theta_a").get<double>();
  meta.theta_b = j.at("theta_b").get<double>();
  meta.theta_c = j.at("theta_c").get<double>();
  if (!j.at("sweep").is_null()) {
    const auto& s = j.at("sweep");
    SweepSpec sweep;
    const auto var = parse_sweep_var(s.at("var").get<std::string>());
    if (!var) throw DataError("metadata: unknown sweep variable");
    sweep.var = *var;
    sweep.start = s.at("start").get<double>();
    sweep.stop = s.at("stop").get<double>();
    sweep.count = s.at("count").get<int>();
    meta.sweep = sweep;
  }
  meta.degrees_input = j.at("degrees_input").get<bool>();
  return meta;
}

}  // namespace

std::string curve_to_csv(const RateCurve& curve) {
  std::string out = "angle_rad";
  for (const auto& name : curve.model_names) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (const CurvePoint& p : curve.points) {
    out += num15(p.angle);
    for (double r : p.rates) {
      out += ',';
      out += num15(r);
    }
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const RateCurve& curve) {
  ordered_json j;
  j["kind"] = "rate_curve";
  j["metadata"] = metadata_to_json(curve.meta);
  j["swept"] = curve.swept_name;
  ordered_json points = ordered_json::array();
  for (const CurvePoint& p : curve.points) {
    ordered_json jp;
    jp["angle_rad"] = p.angle;
    ordered_json rates;
    for (size_t i = 0; i < curve.model_names.size(); ++i) {
      rates[curve.model_names[i]] = p.rates[i];
    }
    jp["rates"] = rates;
    jp["degenerate"] = p.degenerate;
    points.push_back(jp);
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ComparisonReport& report) {
  std::string out = "label," + report.column_a + "," + report.column_b + ",abs_diff\n";
  for (const ReportRow& row : report.rows) {
    out += row.label;
    out += ',';
    out += num15(row.a);
    out += ',';
    out += num15(row.b);
    out += ',';
    out += num15(row.abs_diff);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const ComparisonReport& report) {
  ordered_json j;
  j["kind"] = "comparison_report";
  j["metadata"] = metadata_to_json(report.meta);
  j["column_a"] = report.column_a;
  j["column_b"] = report.column_b;
  ordered_json rows = ordered_json::array();
  for (const ReportRow& row : report.rows) {
    ordered_json jr;
    jr["label"] = row.label;
    jr["a"] = row.a;
    jr["b"] = row.b;
    jr["abs_diff"] = row.abs_diff;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["max_abs_diff"] = report.max_abs_diff;
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

ParsedFile parse_json_file(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("not valid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rate_curve") {
      RateCurve curve;
      curve.meta = metadata_from_json(j.at("metadata"));
      curve.swept_name = j.at("swept").get<std::string>();
      curve.model_names = curve.meta.models;
      for (const auto& jp : j.at("points")) {
        CurvePoint p;
        p.angle = jp.at("angle_rad").get<double>();
        for (const auto& name : curve.model_names) {
          p.rates.push_back(jp.at("rates").at(name).get<double>());
        }
        p.degenerate = jp.at("degenerate").get<bool>();
        curve.points.push_back(std::move(p));
      }
      return curve;
    }
    if (kind == "comparison_report") {
      ComparisonReport report;
      report.meta = metadata_from_json(j.at("metadata"));
      report.column_a = j.at("column_a").get<std::string>();
      report.column_b = j.at("column_b").get<std::string>();
      for (const auto& jr : j.at("rows")) {
        ReportRow row;
        row.label = jr.at("label").get<std::string>();
        row.a = jr.at("a").get<double>();
        row.b = jr.at("b").get<double>();
        row.abs_diff = jr.at("abs_diff").get<double>();
        report.rows.push_back(std::move(row));
      }
      report.max_abs_diff = j.at("max_abs_diff").get<double>();
      report.tolerance = j.at("tolerance").get<double>();
      report.pass = j.at("pass").get<bool>();
      report.notes = j.at("notes").get<std::vector<std::string>>();
      return report;
    }
    throw DataError("unknown file kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("unexpected file structure: ") + e.what());
  }
}

std::string render(const ParsedFile& file, OutputFormat format) {
  if (const auto* curve = std::get_if<RateCurve>(&file)) {
    return format == OutputFormat::csv ? curve_to_csv(*curve) : curve_to_json(*curve);
  }
  const auto& report = std::get<ComparisonReport>(file);
  return format == OutputFormat::csv ? report_to_csv(report) : report_to_json(report);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

}  // namespace mrfoptics::cli
