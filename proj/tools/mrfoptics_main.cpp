// Command-line front end: angle scans, model comparisons, grid-oracle
// cross-checks, and format conversion of previously written result files.
//
// Exit codes: 0 success, 64 usage error, 65 data/normalization error,
// 74 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mrfoptics/errors.hpp"
#include "mrfoptics/report_io.hpp"
#include "mrfoptics/scan.hpp"
#include "mrfoptics/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 74;

constexpr double kDegToRad = mrfoptics::kPi / 180.0;

struct CommonFlags {
  std::string experiment = "bell";
  std::vector<std::string> models;
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta_c = 0.0;
  std::string sweep;
  double alpha = 1e-3;
  int grid_n = 720;
  double k = 0.5;
  std::string format = "csv";
  std::string out;
  bool degrees = false;
  double tolerance = 1e-9;
  std::string config_path;
};

void add_common_options(CLI::App* cmd, CommonFlags* flags, bool with_sweep) {
  cmd->add_option("--experiment", flags->experiment, "bell or triphoton")
      ->check(CLI::IsMember({"bell", "triphoton"}));
  cmd->add_option("--models", flags->models,
                  "comma-separated models: mrf1,mrf2,kqed (bell) or collapse,conjecture "
                  "(triphoton)")
      ->delimiter(',');
  cmd->add_option("--theta-a", flags->theta_a, "left polarizer tuning");
  cmd->add_option("--theta-b", flags->theta_b, "right polarizer tuning");
  cmd->add_option("--theta-c", flags->theta_c, "third polarizer tuning (triphoton)");
  if (with_sweep) {
    cmd->add_option("--sweep", flags->sweep, "<var>:<start>:<stop>:<count>");
  }
  cmd->add_option("--alpha", flags->alpha, "counter/absorption weight");
  cmd->add_option("--grid-n", flags->grid_n, "angle bins per period pi (oracle)");
  cmd->add_option("--k", flags->k, "prefactor of the conjectured triphoton rate");
  cmd->add_option("--format", flags->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags->out, "output path (stdout when omitted)");
  cmd->add_flag("--degrees", flags->degrees, "interpret input angles as degrees");
  cmd->add_option("--config", flags->config_path, "key=value file mirroring these flags");
}

// Flat key=value file (one scan per file).  Keys mirror the flag names
// without the leading dashes; command-line flags win over file values.
void apply_config_file(CLI::App* cmd, CommonFlags* flags) {
  if (flags->config_path.empty()) return;
  const std::string text = mrfoptics::cli::read_file(flags->config_path);

  const auto trim = [](std::string s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
  };
  const auto given = [cmd](const std::string& flag) { return cmd->count(flag) > 0; };

  std::istringstream lines(text);
  std::string line;
  int line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": expected key=value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "experiment") {
        if (!given("--experiment")) flags->experiment = value;
      } else if (key == "models") {
        if (!given("--models")) {
          flags->models.clear();
          std::string item;
          std::istringstream items(value);
          while (std::getline(items, item, ',')) flags->models.push_back(trim(item));
        }
      } else if (key == "theta-a") {
        if (!given("--theta-a")) flags->theta_a = std::stod(value);
      } else if (key == "theta-b") {
        if (!given("--theta-b")) flags->theta_b = std::stod(value);
      } else if (key == "theta-c") {
        if (!given("--theta-c")) flags->theta_c = std::stod(value);
      } else if (key == "sweep") {
        if (!given("--sweep")) flags->sweep = value;
      } else if (key == "alpha") {
        if (!given("--alpha")) flags->alpha = std::stod(value);
      } else if (key == "grid-n") {
        if (!given("--grid-n")) flags->grid_n = std::stoi(value);
      } else if (key == "k") {
        if (!given("--k")) flags->k = std::stod(value);
      } else if (key == "format") {
        if (!given("--format")) flags->format = value;
      } else if (key == "out") {
        if (!given("--out")) flags->out = value;
      } else if (key == "degrees") {
        if (!given("--degrees")) flags->degrees = (value == "true" || value == "1");
      } else if (key == "tolerance") {
        if (!given("--tolerance")) flags->tolerance = std::stod(value);
      } else {
        throw std::invalid_argument("config line " + std::to_string(line_number) +
                                    ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": bad value for '" + key + "'");
    }
  }
}

mrfoptics::cli::SweepSpec parse_sweep_string(const std::string& text, bool degrees) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  if (parts.size() != 4) {
    throw std::invalid_argument("--sweep must look like <var>:<start>:<stop>:<count>");
  }
  const auto var = mrfoptics::cli::parse_sweep_var(parts[0]);
  if (!var) {
    throw std::invalid_argument("unknown sweep variable '" + parts[0] +
                                "' (theta_a, theta_b, theta_c or phi)");
  }
  mrfoptics::cli::SweepSpec sweep;
  sweep.var = *var;
  try {
    sweep.start = std::stod(parts[1]);
    sweep.stop = std::stod(parts[2]);
    sweep.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("--sweep bounds must be numbers and count an integer");
  }
  if (degrees) {
    sweep.start *= kDegToRad;
    sweep.stop *= kDegToRad;
  }
  return sweep;
}

mrfoptics::cli::ScanRequest build_request(const CommonFlags& flags, bool with_sweep) {
  using namespace mrfoptics::cli;
  ScanRequest request;
  const auto experiment = parse_experiment(flags.experiment);
  if (!experiment) throw std::invalid_argument("unknown experiment '" + flags.experiment + "'");
  request.experiment = *experiment;

  if (flags.models.empty()) {
    request.models = request.experiment == Experiment::bell
                         ? std::vector<ModelId>{ModelId::mrf1, ModelId::mrf2, ModelId::kqed}
                         : std::vector<ModelId>{ModelId::collapse, ModelId::conjecture};
  } else {
    for (const std::string& name : flags.models) {
      const auto model = parse_model(name);
      if (!model) throw std::invalid_argument("unknown model '" + name + "'");
      request.models.push_back(*model);
    }
  }

  const double scale = flags.degrees ? kDegToRad : 1.0;
  request.theta_a = flags.theta_a * scale;
  request.theta_b = flags.theta_b * scale;
  request.theta_c = flags.theta_c * scale;
  if (with_sweep) {
    if (flags.sweep.empty()) {
      throw std::invalid_argument("--sweep is required (<var>:<start>:<stop>:<count>)");
    }
    request.sweep = parse_sweep_string(flags.sweep, flags.degrees);
  }
  request.alpha = flags.alpha;
  request.grid_n = flags.grid_n;
  request.k = flags.k;
  request.degrees_input = flags.degrees;
  return request;
}

void emit(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    mrfoptics::cli::write_file(out_path, bytes);
  }
}

mrfoptics::cli::OutputFormat require_format(const std::string& name) {
  const auto format = mrfoptics::cli::parse_format(name);
  if (!format) throw std::invalid_argument("format must be csv or json, got '" + name + "'");
  return *format;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mrfoptics::cli;

  CLI::App app{std::string(mrfoptics::kToolName) + " " + mrfoptics::kToolVersion +
               " - coincidence-rate predictions for lumped photonic circuits"};
  app.require_subcommand(1);

  CommonFlags scan_flags, compare_flags, oracle_flags;

  CLI::App* scan_cmd = app.add_subcommand("scan", "evaluate models over one swept angle");
  add_common_options(scan_cmd, &scan_flags, /*with_sweep=*/true);

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "per-point differences between two models");
  add_common_options(compare_cmd, &compare_flags, /*with_sweep=*/true);
  compare_cmd->add_option("--tolerance", compare_flags.tolerance,
                          "max |difference| for a pass verdict");

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "grid realization of mrf1 vs its analytic rates");
  add_common_options(oracle_cmd, &oracle_flags, /*with_sweep=*/false);
  bool oracle_tolerance_set = false;
  oracle_cmd->add_option("--tolerance", oracle_flags.tolerance, "override the default tolerance")
      ->each([&](const std::string&) { oracle_tolerance_set = true; });

  std::string export_in, export_format = "csv", export_out;
  CLI::App* export_cmd = app.add_subcommand("export", "re-emit a JSON result file");
  export_cmd->add_option("--in", export_in, "JSON file written by scan/compare/oracle")
      ->required();
  export_cmd->add_option("--format", export_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  export_cmd->add_option("--out", export_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (scan_cmd->parsed()) {
      apply_config_file(scan_cmd, &scan_flags);
      const ScanRequest request = build_request(scan_flags, true);
      const RateCurve curve = run_scan(request);
      const OutputFormat format = require_format(scan_flags.format);
      emit(format == OutputFormat::csv ? curve_to_csv(curve) : curve_to_json(curve),
           scan_flags.out);
    } else if (compare_cmd->parsed()) {
      apply_config_file(compare_cmd, &compare_flags);
      const ScanRequest request = build_request(compare_flags, true);
      const ComparisonReport report = run_compare(request, compare_flags.tolerance);
      const OutputFormat format = require_format(compare_flags.format);
      emit(format == OutputFormat::csv ? report_to_csv(report) : report_to_json(report),
           compare_flags.out);
      std::cerr << "max |diff| = " << report.max_abs_diff << " vs tolerance "
                << report.tolerance << " -> " << (report.pass ? "pass" : "fail") << "\n";
    } else if (oracle_cmd->parsed()) {
      apply_config_file(oracle_cmd, &oracle_flags);
      if (oracle_flags.models.empty()) oracle_flags.models = {"mrf1"};
      const ScanRequest request = build_request(oracle_flags, false);
      const std::optional<double> tol =
          oracle_tolerance_set ? std::optional<double>(oracle_flags.tolerance) : std::nullopt;
      const ComparisonReport report = run_oracle(request, tol);
      const OutputFormat format = require_format(oracle_flags.format);
      emit(format == OutputFormat::csv ? report_to_csv(report) : report_to_json(report),
           oracle_flags.out);
      std::cerr << "max |diff| = " << report.max_abs_diff << " vs tolerance "
                << report.tolerance << " -> " << (report.pass ? "pass" : "fail") << "\n";
    } else if (export_cmd->parsed()) {
      const OutputFormat format = require_format(export_format);
      const ParsedFile parsed = parse_json_file(read_file(export_in));
      emit(render(parsed, format), export_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mrfoptics::NormalizationError& e) {
    std::cerr << "normalization error: " << e.what() << "\n";
    return kExitData;
  } catch (const mrfoptics::DegenerateAnglesError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mrfoptics::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mrfoptics::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kExitOk;
}
