#include "mrfoptics/kqed.hpp"

#include <cmath>

namespace mrfoptics::kqed {

SpinOperator rotation(double phi) {
  SpinOperator m;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  m.at(0, 0) = c;
  m.at(0, 1) = s;
  m.at(1, 0) = -s;
  m.at(1, 1) = c;
  return m;
}

SpinOperator projector(Angle theta) {
  SpinOperator m;
  const double c = std::cos(theta.value());
  const double s = std::sin(theta.value());
  m.at(0, 0) = c * c;
  m.at(0, 1) = c * s;
  m.at(1, 0) = s * c;
  m.at(1, 1) = s * s;
  return m;
}

WaveMatrix initial_biphoton() {
  WaveMatrix psi;
  const double a = 1.0 / std::sqrt(2.0);
  psi.at(0, 0) = a;
  psi.at(1, 1) = a;
  return psi;
}

WaveMatrix apply_polarizers(const WaveMatrix& psi, Angle theta_a, Angle theta_b) {
  const SpinOperator ma = projector(theta_a);
  const SpinOperator mb = projector(theta_b);
  WaveMatrix out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex v = 0.0;
      for (int k = 0; k < 2; ++k) {
        for (int m = 0; m < 2; ++m) {
          v += ma.at(i, k) * psi.at(k, m) * mb.at(m, j);
        }
      }
      out.at(i, j) = v;
    }
  }
  return out;
}

double coincidence_rate(Angle theta_a, Angle theta_b) {
  return apply_polarizers(initial_biphoton(), theta_a, theta_b).square_norm();
}

double absorption_probability(Angle theta_in, Angle theta_tune) {
  return sin2(theta_in.value() - theta_tune.value());
}

JointOutcomeRates outcome_rates(Angle theta_a, Angle theta_b) {
  const WaveMatrix psi0 = initial_biphoton();
  const Angle a_blocked = theta_a.orthogonal();
  const Angle b_blocked = theta_b.orthogonal();
  JointOutcomeRates r;
  r.both_pass = apply_polarizers(psi0, theta_a, theta_b).square_norm();
  r.left_only = apply_polarizers(psi0, theta_a, b_blocked).square_norm();
  r.right_only = apply_polarizers(psi0, a_blocked, theta_b).square_norm();
  r.neither = apply_polarizers(psi0, a_blocked, b_blocked).square_norm();
  return r;
}

}  // namespace mrfoptics::kqed
