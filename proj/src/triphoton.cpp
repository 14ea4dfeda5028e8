#include "mrfoptics/triphoton.hpp"

#include <cmath>
#include <stdexcept>

namespace mrfoptics::triphoton {

TriphotonState ghz_state() {
  TriphotonState psi;
  const double a = 1.0 / std::sqrt(2.0);
  psi.amp[0b001] = a;  // |0>_a |0>_b |pi/2>_c
  psi.amp[0b110] = a;  // |pi/2>_a |pi/2>_b |0>_c
  return psi;
}

BasisChange rebase_coefficients(Angle theta) {
  const double c = std::cos(theta.value());
  const double s = std::sin(theta.value());
  return {c, -s, s, c};
}

CollapseBranch collapse_at_polarizer(const TriphotonState& state, Photon photon, Angle theta_p) {
  const double norm_in = state.square_norm();
  if (norm_in <= 0.0) {
    throw std::invalid_argument("collapse_at_polarizer: zero-norm state");
  }

  const int bit = bit_of(photon);
  const double c = std::cos(theta_p.value());
  const double s = std::sin(theta_p.value());

  // Amplitudes of the pass component per configuration of the other two
  // photons, and the reconstruction of the passed photon along the pass
  // line in the horizontal/vertical basis.
  double pass_norm = 0.0;
  std::array<Complex, 8> pass_amp{};
  for (int rest = 0; rest < 8; ++rest) {
    if (rest & (1 << bit)) continue;  // enumerate indices with photon bit = 0
    const Complex h = state.amp[rest];
    const Complex v = state.amp[rest | (1 << bit)];
    const Complex along_pass = c * h + s * v;
    pass_norm += std::norm(along_pass);
    pass_amp[rest] = along_pass * c;
    pass_amp[rest | (1 << bit)] = along_pass * s;
  }

  CollapseBranch branch;
  branch.pass_probability = pass_norm / norm_in;
  branch.absorbed_probability = 1.0 - branch.pass_probability;
  if (pass_norm > 0.0) {
    TriphotonState passed;
    const double scale = 1.0 / std::sqrt(pass_norm);
    for (int i = 0; i < 8; ++i) passed.amp[i] = pass_amp[i] * scale;
    branch.passed_state = passed;
  }
  return branch;
}

double cascade_pass_ab(Angle theta_a, Angle theta_b) {
  return cos2(theta_a) * cos2(theta_b) + sin2(theta_a) * sin2(theta_b);
}

double triple_rate_collapse(Angle theta_a, Angle theta_b, Angle theta_c) {
  const double ca = std::cos(theta_a.value());
  const double sa = std::sin(theta_a.value());
  const double cb = std::cos(theta_b.value());
  const double sb = std::sin(theta_b.value());
  const double cc = std::cos(theta_c.value());
  const double sc = std::sin(theta_c.value());
  const double amp = ca * cb * sc + sa * sb * cc;
  return 0.5 * amp * amp;
}

double triple_rate_cascade_ordered(Angle theta_a, Angle theta_b, Angle theta_c,
                                   const std::array<Photon, 3>& order) {
  const auto angle_of = [&](Photon p) {
    switch (p) {
      case Photon::a: return theta_a;
      case Photon::b: return theta_b;
      case Photon::c: return theta_c;
    }
    throw std::invalid_argument("triple_rate_cascade_ordered: bad photon");
  };

  TriphotonState state = ghz_state();
  double rate = 1.0;
  for (Photon p : order) {
    const CollapseBranch branch = collapse_at_polarizer(state, p, angle_of(p));
    rate *= branch.pass_probability;
    if (!branch.passed_state) return 0.0;
    state = *branch.passed_state;
  }
  return rate;
}

double triple_rate_cascade(Angle theta_a, Angle theta_b, Angle theta_c) {
  return triple_rate_cascade_ordered(theta_a, theta_b, theta_c,
                                     {Photon::a, Photon::b, Photon::c});
}

namespace {

void walk_branches(const TriphotonState& state, double probability, int stage,
                   const std::array<std::pair<Photon, Angle>, 3>& stages,
                   std::array<double, 8>& out, int path) {
  if (stage == 3) {
    out[path] += probability;
    return;
  }
  if (probability == 0.0) {
    // distribute the zero over both sub-branches so all 8 entries exist
    walk_branches(state, 0.0, stage + 1, stages, out, path << 1);
    walk_branches(state, 0.0, stage + 1, stages, out, (path << 1) | 1);
    return;
  }
  const auto& [photon, theta] = stages[stage];
  const CollapseBranch pass = collapse_at_polarizer(state, photon, theta);
  // The blocked line of theta is the pass line of theta + pi/2.
  const CollapseBranch block = collapse_at_polarizer(state, photon, theta.orthogonal());

  if (pass.passed_state) {
    walk_branches(*pass.passed_state, probability * pass.pass_probability, stage + 1, stages, out,
                  (path << 1) | 1);
  } else {
    walk_branches(state, 0.0, stage + 1, stages, out, (path << 1) | 1);
  }
  if (block.passed_state) {
    walk_branches(*block.passed_state, probability * block.pass_probability, stage + 1, stages,
                  out, path << 1);
  } else {
    walk_branches(state, 0.0, stage + 1, stages, out, path << 1);
  }
}

}  // namespace

std::array<double, 8> branch_distribution(Angle theta_a, Angle theta_b, Angle theta_c) {
  std::array<double, 8> out{};
  const std::array<std::pair<Photon, Angle>, 3> stages = {
      std::pair{Photon::a, theta_a}, std::pair{Photon::b, theta_b}, std::pair{Photon::c, theta_c}};
  walk_branches(ghz_state(), 1.0, 0, stages, out, 0);
  return out;
}

namespace {

using Mat3 = std::array<Complex, 9>;

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Complex v = 0.0;
      for (int k = 0; k < 3; ++k) v += a[3 * i + k] * b[3 * k + j];
      out[3 * i + j] = v;
    }
  }
  return out;
}

Mat3 adjoint(const Mat3& a) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[3 * i + j] = std::conj(a[3 * j + i]);
  }
  return out;
}

// Annihilation of the mode polarized along theta_p + pi/2, on the basis
// {horizontal, vertical, vacuum}: |vac><u_blocked| restricted to the photon
// sector.
Mat3 blocked_annihilator(Angle theta_p) {
  const double c = std::cos(theta_p.value());
  const double s = std::sin(theta_p.value());
  Mat3 a{};
  a[3 * 2 + 0] = -s;  // <horizontal | u_blocked>
  a[3 * 2 + 1] = c;   // <vertical   | u_blocked>
  return a;
}

void require_valid_density(const PolarizerDensity& rho) {
  if (!(rho.g > 0.0)) throw std::invalid_argument("PolarizerDensity: g must be > 0");
  if (!(rho.dt > 0.0)) throw std::invalid_argument("PolarizerDensity: dt must be > 0");
  constexpr double tol = 1e-9;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::abs(rho.at(i, j) - std::conj(rho.at(j, i))) > tol) {
        throw std::invalid_argument("PolarizerDensity: matrix must be Hermitian");
      }
    }
  }
  // Positive semidefiniteness: every principal minor of a Hermitian PSD
  // matrix is nonnegative.
  const auto minor1 = [&](int i) { return rho.at(i, i).real(); };
  const auto minor2 = [&](int i, int j) {
    return (rho.at(i, i) * rho.at(j, j) - rho.at(i, j) * rho.at(j, i)).real();
  };
  const Complex det3 =
      rho.at(0, 0) * (rho.at(1, 1) * rho.at(2, 2) - rho.at(1, 2) * rho.at(2, 1)) -
      rho.at(0, 1) * (rho.at(1, 0) * rho.at(2, 2) - rho.at(1, 2) * rho.at(2, 0)) +
      rho.at(0, 2) * (rho.at(1, 0) * rho.at(2, 1) - rho.at(1, 1) * rho.at(2, 0));
  if (minor1(0) < -tol || minor1(1) < -tol || minor1(2) < -tol || minor2(0, 1) < -tol ||
      minor2(0, 2) < -tol || minor2(1, 2) < -tol || det3.real() < -tol) {
    throw std::invalid_argument("PolarizerDensity: matrix must be positive semidefinite");
  }
}

}  // namespace

double blocked_population(const PolarizerDensity& rho, Angle theta_p) {
  const double c = std::cos(theta_p.value());
  const double s = std::sin(theta_p.value());
  // <u_blocked | rho | u_blocked> with u_blocked = (-sin, cos) in the photon sector
  const Complex v = s * s * rho.at(0, 0) - s * c * rho.at(0, 1) - c * s * rho.at(1, 0) +
                    c * c * rho.at(1, 1);
  return v.real();
}

PolarizerDensity master_equation_step(const PolarizerDensity& rho, Angle theta_p) {
  require_valid_density(rho);

  const Mat3 a = blocked_annihilator(theta_p);
  const Mat3 a_dag = adjoint(a);
  const double g = rho.g;

  const auto rhs = [&](const Mat3& m) {
    Mat3 out = multiply(multiply(a, m), a_dag);
    for (auto& z : out) z *= g;
    return out;
  };

  const auto axpy = [](const Mat3& m, const Mat3& k, double h) {
    Mat3 out = m;
    for (int i = 0; i < 9; ++i) out[i] += h * k[i];
    return out;
  };

  // Classical fourth-order Runge-Kutta over a few substeps.  The generator
  // is nilpotent on this sector, so the integration reproduces the exact
  // solution up to roundoff.
  constexpr int substeps = 8;
  const double h = rho.dt / substeps;
  Mat3 m = rho.rho;
  for (int step = 0; step < substeps; ++step) {
    const Mat3 k1 = rhs(m);
    const Mat3 k2 = rhs(axpy(m, k1, h / 2));
    const Mat3 k3 = rhs(axpy(m, k2, h / 2));
    const Mat3 k4 = rhs(axpy(m, k3, h));
    for (int i = 0; i < 9; ++i) {
      m[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

  PolarizerDensity out = rho;
  out.rho = m;
  return out;
}

double conjectured_mrf_triple_rate(Angle theta_a, Angle theta_b, Angle theta_c, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("conjectured_mrf_triple_rate: k must be > 0");
  }
  return k * cos2(theta_c.value() - theta_b.value() - theta_a.value());
}

}  // namespace mrfoptics::triphoton
