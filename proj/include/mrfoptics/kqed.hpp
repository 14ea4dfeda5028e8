#pragma once

#include <array>
#include <complex>

#include "mrfoptics/angle.hpp"

namespace mrfoptics::kqed {

using Complex = std::complex<double>;

// Two-photon wave function over the linear-polarization basis, written as a
// 2x2 matrix: entry (i, j) is the amplitude for the left photon in basis
// state i and the right photon in basis state j.  Amplitudes are kept
// complex even though this circuit stays real-valued throughout.
struct WaveMatrix {
  std::array<Complex, 4> e{};  // row-major

  Complex& at(int i, int j) { return e[2 * i + j]; }
  Complex at(int i, int j) const { return e[2 * i + j]; }

  // Tr(psi psi^H) = sum of squared amplitude magnitudes.
  double square_norm() const {
    double s = 0.0;
    for (const auto& z : e) s += std::norm(z);
    return s;
  }
};

// Real 2x2 operator acting on one photon's polarization index.
struct SpinOperator {
  std::array<double, 4> e{};

  double& at(int i, int j) { return e[2 * i + j]; }
  double at(int i, int j) const { return e[2 * i + j]; }

  friend SpinOperator operator*(const SpinOperator& a, const SpinOperator& b) {
    SpinOperator out;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
      }
    }
    return out;
  }
};

// Rotation of the polarization plane: [[cos, sin], [-sin, cos]].
SpinOperator rotation(double phi);

// Rank-1 projector u u^T onto the line at angle theta, u = (cos, sin).
SpinOperator projector(Angle theta);

// Entangled source state: I / sqrt(2).
WaveMatrix initial_biphoton();

// M(theta_a) acting on the left index, M(theta_b) on the right.
WaveMatrix apply_polarizers(const WaveMatrix& psi, Angle theta_a, Angle theta_b);

// Tr(psi+ psi+^H) for psi+ = M(a) psi0 M(b); equals cos^2(a - b) / 2.
double coincidence_rate(Angle theta_a, Angle theta_b);

// Probability that a photon polarized at theta_in is absorbed by an ideal
// polarizer tuned to theta_tune: sin^2 of the difference.
double absorption_probability(Angle theta_in, Angle theta_tune);

// Probabilities of the four counter patterns per emitted pair, computed by
// projecting onto the pass/blocked line of each polarizer.
struct JointOutcomeRates {
  double both_pass = 0.0;
  double left_only = 0.0;
  double right_only = 0.0;
  double neither = 0.0;
};

JointOutcomeRates outcome_rates(Angle theta_a, Angle theta_b);

}  // namespace mrfoptics::kqed
