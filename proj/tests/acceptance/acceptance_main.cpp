// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one pass/fail line per criterion.  Exits nonzero if any fail.
//
// Usage: acceptance <path-to-mrfoptics-cli>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "mrfoptics/bell_models.hpp"
#include "mrfoptics/kqed.hpp"
#include "mrfoptics/report_io.hpp"
#include "mrfoptics/scan.hpp"
#include "mrfoptics/triphoton.hpp"

using namespace mrfoptics;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli_path;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s: %s\n", number, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

int run_cli(const std::string& args) {
  const std::string command = "\"" + g_cli_path + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// --- criterion 1: analytic biphoton law across all three models ------------

void criterion_biphoton_law() {
  Timer timer;
  double max_err = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double phi = i * kHalfPi / 101.0;  // uniform in (0, pi/2), endpoints excluded
    const double expected = 0.5 * cos2(phi);
    for (bell::Model model : {bell::Model::mrf1, bell::Model::mrf2, bell::Model::kqed}) {
      const double rate =
          bell::bell_rates(bell::BellConfig(Angle(phi), Angle(0.0), model)).coincidence;
      max_err = std::max(max_err, std::abs(rate - expected));
    }
  }
  const double elapsed = timer.seconds();
  report(1, "biphoton law, 100 phi values, three models", max_err <= 1e-12 && elapsed < 1.0,
         "max |rate - cos^2(phi)/2| = " + fmt(max_err) + " (limit 1e-12), " + fmt(elapsed) + " s");
}

// --- criterion 2: partition identities --------------------------------------

void criterion_partition_identities() {
  const bell::BellConfig config(Angle(0.9), Angle(0.2), bell::Model::mrf1, 1e-3);
  double z1 = 0.0;
  for (const auto& c : bell::enumerate_classes_mrf1(config)) z1 += c.mass.coefficient_at(3);
  const bell::BellConfig config2(Angle(0.9), Angle(0.2), bell::Model::mrf2, 1e-3);
  double z2 = 0.0;
  for (const auto& c : bell::enumerate_classes_mrf2(config2)) z2 += c.mass.coefficient_at(2);
  const bool pass = std::abs(z1 - 4.0) <= 1e-12 && std::abs(z2 - 2.0) <= 1e-12;
  report(2, "partition identities Z = 4a^3 (mrf1) and 2a^2 (mrf2)", pass,
         "coefficients " + fmt(z1) + " @a^3 and " + fmt(z2) + " @a^2");
}

// --- criterion 3: subset masses at phi = pi/6 -------------------------------

void criterion_subset_masses() {
  const double phi = kPi / 6;
  const bell::BellConfig config(Angle(phi), Angle(0.0), bell::Model::mrf1, 1e-3);
  const auto classes = bell::enumerate_classes_mrf1(config);
  double max_err = 0.0;
  double normalized_sum = 0.0;
  double total = 0.0;
  for (const auto& c : classes) total += c.mass.coefficient_at(3);
  for (const auto& c : classes) {
    const double expected =
        (c.label == bell::kLabelCoincidence || c.label == bell::kLabelAntiDouble)
            ? 2.0 * cos2(phi)
            : 2.0 * sin2(phi);
    max_err = std::max(max_err, std::abs(c.mass.coefficient_at(3) - expected));
    normalized_sum += c.mass.coefficient_at(3) / total;
  }
  const bool pass = max_err <= 1e-12 && std::abs(normalized_sum - 1.0) <= 1e-12;
  report(3, "mrf1 subset masses at phi = pi/6", pass,
         "max mass error " + fmt(max_err) + ", normalized sum " + fmt(normalized_sum));
}

// --- criterion 4: grid oracle ------------------------------------------------

void criterion_grid_oracle() {
  Timer timer;
  const int n = 720;
  const double alpha = 1e-3;
  double max_err = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const int bin = 36 * k - 18;  // on-grid, strictly inside (0, pi/2)
    const double phi = bin * kPi / n;
    const bell::BellConfig config(Angle(phi), Angle(0.0), bell::Model::mrf1, alpha);
    const bell::BellGridOracle oracle = bell::build_bell_grid_mrf1(config, n);
    const bell::GridFieldResult grid = bell::grid_field_probabilities(oracle);
    const bell::BellRates analytic = bell::bell_rates(config);
    const std::array<double, 4> expected = {analytic.coincidence, analytic.klyshko_absorb,
                                            analytic.anti_double_absorb, analytic.anti_single};
    for (int f = 0; f < 4; ++f) {
      max_err = std::max(max_err, std::abs(grid.probabilities[f] - expected[f]));
    }
  }
  const double elapsed = timer.seconds();
  report(4, "grid oracle, n = 720, 10 tuning differences, all four fields",
         max_err <= 1e-3 && elapsed < 60.0,
         "max |grid - analytic| = " + fmt(max_err) + " (limit 1e-3), " + fmt(elapsed) + " s");
}

// --- criterion 5: operator laws ---------------------------------------------

void criterion_operator_laws() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, kPi);
  double max_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Angle theta(u(rng));
    const kqed::SpinOperator m = kqed::projector(theta);
    const kqed::SpinOperator mm = m * m;
    const kqed::SpinOperator complement = kqed::projector(theta.orthogonal());
    for (int j = 0; j < 4; ++j) {
      max_err = std::max(max_err, std::abs(mm.e[j] - m.e[j]));
      const double identity = (j == 0 || j == 3) ? 1.0 : 0.0;
      max_err = std::max(max_err, std::abs(m.e[j] + complement.e[j] - identity));
    }
    const Angle a(u(rng)), b(u(rng));
    max_err = std::max(max_err, std::abs(kqed::coincidence_rate(a, b) -
                                         0.5 * cos2(a.value() - b.value())));
  }
  report(5, "projector laws and trace rate, 100 random angles", max_err <= 1e-12,
         "max deviation " + fmt(max_err) + " (limit 1e-12)");
}

// --- criterion 6: triphoton closed form vs cascade ---------------------------

void criterion_triphoton_cascade() {
  double max_rate_err = 0.0;
  double max_branch_err = 0.0;
  double max_complement_err = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const Angle a(i * kPi / 10), b(j * kPi / 10), c(k * kPi / 10);
        const double closed = triphoton::triple_rate_collapse(a, b, c);
        max_rate_err =
            std::max(max_rate_err, std::abs(closed - triphoton::triple_rate_cascade(a, b, c)));
        const auto branches = triphoton::branch_distribution(a, b, c);
        double sum = 0.0;
        for (double p : branches) sum += p;
        max_branch_err = std::max(max_branch_err, std::abs(sum - 1.0));
        const double pair = closed + triphoton::triple_rate_collapse(a, b, c.orthogonal());
        max_complement_err = std::max(
            max_complement_err, std::abs(pair - 0.5 * triphoton::cascade_pass_ab(a, b)));
      }
    }
  }
  const bool pass = max_rate_err <= 1e-12 && max_branch_err <= 1e-12 && max_complement_err <= 1e-12;
  report(6, "closed form vs cascade on a 10^3 grid", pass,
         "rate " + fmt(max_rate_err) + ", branch sum " + fmt(max_branch_err) + ", complement " +
             fmt(max_complement_err) + " (limits 1e-12)");
}

// --- criterion 7: triphoton spot values --------------------------------------

void criterion_triphoton_spots() {
  const double r1 = triphoton::triple_rate_collapse(Angle(0), Angle(0), Angle(kHalfPi));
  const double r2 = triphoton::triple_rate_collapse(Angle(0), Angle(0), Angle(0));
  const double r3 = triphoton::triple_rate_collapse(Angle(kPi / 4), Angle(kPi / 4), Angle(kPi / 4));
  const double r3_chain =
      triphoton::triple_rate_cascade(Angle(kPi / 4), Angle(kPi / 4), Angle(kPi / 4));
  const bool pass = std::abs(r1 - 0.5) <= 1e-12 && std::abs(r2) <= 1e-12 &&
                    std::abs(r3 - 0.25) <= 1e-12 && std::abs(r3_chain - 0.25) <= 1e-12;
  report(7, "triple-rate spot values", pass,
         "R(0,0,pi/2) = " + fmt(r1) + ", R(0,0,0) = " + fmt(r2) + ", R(pi/4^3) = " + fmt(r3));
}

// --- criterion 8: master equation -------------------------------------------

void criterion_master_equation() {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::uniform_real_distribution<double> positive(0.1, 3.0);
  double max_err = 0.0;
  bool shape_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    std::array<triphoton::Complex, 9> a{};
    for (auto& z : a) z = triphoton::Complex(u(rng), u(rng));
    triphoton::PolarizerDensity rho;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        triphoton::Complex v = 0.0;
        for (int k = 0; k < 3; ++k) v += a[3 * i + k] * std::conj(a[3 * j + k]);
        rho.at(i, j) = v;
      }
    }
    const double trace = rho.trace_real();
    for (auto& z : rho.rho) z /= trace;
    rho.g = positive(rng);
    rho.dt = positive(rng);
    const Angle tune(angle(rng));

    const triphoton::PolarizerDensity stepped = triphoton::master_equation_step(rho, tune);
    const double fed = rho.g * rho.dt * triphoton::blocked_population(rho, tune);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        triphoton::Complex expected = rho.at(i, j);
        if (i == 2 && j == 2) expected += fed;
        max_err = std::max(max_err, std::abs(stepped.at(i, j) - expected));
        if (std::abs(stepped.at(i, j) - std::conj(stepped.at(j, i))) > 1e-12) shape_ok = false;
      }
    }
    try {
      triphoton::master_equation_step(stepped, tune);  // revalidates positivity
    } catch (const std::exception&) {
      shape_ok = false;
    }
  }
  report(8, "master equation vs exact solution, 100 random states",
         max_err <= 1e-10 && shape_ok,
         "max |numeric - exact| = " + fmt(max_err) + " (limit 1e-10), Hermitian/PSD preserved");
}

// --- criterion 9: model discrimination ---------------------------------------

void criterion_model_discrimination() {
  double global_max = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      cli::ScanRequest request;
      request.experiment = cli::Experiment::triphoton;
      request.models = {cli::ModelId::collapse, cli::ModelId::conjecture};
      request.theta_a = i * kPi / 20;
      request.theta_b = j * kPi / 20;
      request.k = 0.5;
      request.sweep = {cli::SweepVar::theta_c, 0.0, 19.0 * kPi / 20, 20};
      const cli::ComparisonReport report_row = cli::run_compare(request, 1e-2);
      global_max = std::max(global_max, report_row.max_abs_diff);
    }
  }
  const double spot =
      std::abs(triphoton::triple_rate_collapse(Angle(0), Angle(0), Angle(kHalfPi)) -
               triphoton::conjectured_mrf_triple_rate(Angle(0), Angle(0), Angle(kHalfPi), 0.5));

  // the same verdict through the actual compare command
  double cli_max = 0.0;
  bool cli_ok = false;
  const fs::path out = fs::temp_directory_path() / "mrfoptics_discrimination.json";
  if (run_cli("compare --experiment triphoton --models collapse,conjecture "
              "--theta-a 0 --theta-b 0 --k 0.5 --tolerance 1e-2 "
              "--sweep theta_c:0:2.9845130209103035:20 --format json --out " +
              out.string()) == 0) {
    const cli::ParsedFile parsed = cli::parse_json_file(cli::read_file(out.string()));
    if (const auto* rep = std::get_if<cli::ComparisonReport>(&parsed)) {
      cli_max = rep->max_abs_diff;
      cli_ok = !rep->pass;
    }
  }
  std::error_code ec;
  fs::remove(out, ec);

  const bool pass = global_max >= 0.4 && std::abs(spot - 0.5) <= 1e-12 && cli_ok && cli_max >= 0.4;
  report(9, "collapse vs conjecture over a 20^3 grid", pass,
         "max |diff| = " + fmt(global_max) + " (floor 0.4), |diff|(0,0,pi/2) = " + fmt(spot) +
             ", compare command reports " + fmt(cli_max));
}

// --- criterion 10: CLI determinism and exit codes -----------------------------

void criterion_cli_contract() {
  const fs::path dir = fs::temp_directory_path() / "mrfoptics_acceptance";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);

  const std::string scan_args =
      "scan --experiment bell --models mrf1,kqed --theta-b 0 "
      "--sweep theta_a:0.1:1.4:7";
  bool pass = true;
  std::string detail;

  for (const std::string format : {"csv", "json"}) {
    const fs::path f1 = dir / ("run1." + format);
    const fs::path f2 = dir / ("run2." + format);
    if (run_cli(scan_args + " --format " + format + " --out " + f1.string()) != 0 ||
        run_cli(scan_args + " --format " + format + " --out " + f2.string()) != 0) {
      pass = false;
      detail = "scan invocation failed";
      break;
    }
    if (cli::read_file(f1.string()) != cli::read_file(f2.string())) {
      pass = false;
      detail = format + " outputs differ between identical runs";
      break;
    }
  }

  if (pass) {
    const int usage = run_cli("scan --experiment bell --models bogus --sweep theta_a:0:1:5");
    const int io =
        run_cli(scan_args + " --format csv --out /nonexistent_dir_zz/out.csv");
    const fs::path corrupt = dir / "corrupt.json";
    cli::write_file(corrupt.string(), "{ \"kind\": \"mystery\" }");
    const int data = run_cli("export --in " + corrupt.string() + " --format csv");
    const int ok = run_cli(scan_args + " --format csv");
    if (ok != 0 || usage != 64 || data != 65 || io != 74) {
      pass = false;
      detail = "exit codes (ok,usage,data,io) = (" + std::to_string(ok) + "," +
               std::to_string(usage) + "," + std::to_string(data) + "," + std::to_string(io) +
               "), expected (0,64,65,74)";
    } else {
      detail = "byte-identical csv+json reruns; exit codes 0/64/65/74";
    }
  }

  if (pass) {
    // a config file mirrors the flag set; flags override file values
    const fs::path conf = dir / "scan.conf";
    cli::write_file(conf.string(),
                    "experiment = bell\nmodels = mrf1,kqed\ntheta-b = 0\n"
                    "sweep = theta_a:0.1:1.4:7\nformat = csv\n");
    const fs::path from_conf = dir / "from_conf.csv";
    const fs::path from_flags = dir / "from_flags.csv";
    const fs::path overridden = dir / "overridden.csv";
    const fs::path kqed_only = dir / "kqed_only.csv";
    if (run_cli("scan --config " + conf.string() + " --out " + from_conf.string()) != 0 ||
        run_cli(scan_args + " --format csv --out " + from_flags.string()) != 0 ||
        run_cli("scan --config " + conf.string() + " --models kqed --out " +
                overridden.string()) != 0 ||
        run_cli("scan --experiment bell --models kqed --theta-b 0 --sweep theta_a:0.1:1.4:7 "
                "--format csv --out " +
                kqed_only.string()) != 0) {
      pass = false;
      detail = "config-file invocation failed";
    } else if (cli::read_file(from_conf.string()) != cli::read_file(from_flags.string())) {
      pass = false;
      detail = "config file and equivalent flags disagree";
    } else if (cli::read_file(overridden.string()) != cli::read_file(kqed_only.string())) {
      pass = false;
      detail = "command-line flag did not override the config file";
    } else {
      detail += "; config file mirrors flags and is overridden by them";
    }
  }

  fs::remove_all(dir, ec);
  report(10, "CLI determinism and exit-code contract", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-mrfoptics-cli>\n";
    return 2;
  }
  g_cli_path = argv[1];

  criterion_biphoton_law();
  criterion_partition_identities();
  criterion_subset_masses();
  criterion_grid_oracle();
  criterion_operator_laws();
  criterion_triphoton_cascade();
  criterion_triphoton_spots();
  criterion_master_equation();
  criterion_model_discrimination();
  criterion_cli_contract();

  if (g_failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
