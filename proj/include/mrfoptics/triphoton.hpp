#pragma once

#include <array>
#include <complex>
#include <optional>

#include "mrfoptics/angle.hpp"

namespace mrfoptics::triphoton {

using Complex = std::complex<double>;

// Which photon a polarizer acts on; the value is the bit position of that
// photon in the basis index.
enum class Photon : int { c = 0, b = 1, a = 2 };

inline int bit_of(Photon p) { return static_cast<int>(p); }

// Three-photon state over the 8 kets |p_a>|p_b>|p_c> with p in {0, pi/2}
// per photon.  Basis index: bit 2 = photon a, bit 1 = b, bit 0 = c;
// bit value 0 means horizontal (|0>), 1 means vertical (|pi/2>).
struct TriphotonState {
  std::array<Complex, 8> amp{};

  double square_norm() const {
    double s = 0.0;
    for (const auto& z : amp) s += std::norm(z);
    return s;
  }
};

// Source state: (|0>|0>|pi/2> + |pi/2>|pi/2>|0>) / sqrt(2).
TriphotonState ghz_state();

// Coefficients of |0> and |pi/2> in the rotated basis {|theta>, |theta + pi/2>}:
//   |0>    =  cos |theta> - sin |theta + pi/2>
//   |pi/2> =  sin |theta> + cos |theta + pi/2>
struct BasisChange {
  double pass_from_h = 0.0;
  double block_from_h = 0.0;
  double pass_from_v = 0.0;
  double block_from_v = 0.0;
};

BasisChange rebase_coefficients(Angle theta);

// Result of projecting one photon onto the pass line of a polarizer.  The
// passed state has the measured photon polarized exactly along the pass
// line and is renormalized to 1; it is absent when the pass probability is
// zero.
struct CollapseBranch {
  double pass_probability = 0.0;
  double absorbed_probability = 1.0;
  std::optional<TriphotonState> passed_state;
};

// Decomposes the state into the |theta_p> and |theta_p + pi/2> components
// of the given photon.  Pass probability is the square norm of the first
// component relative to the incoming norm.  A zero-norm input is an error.
CollapseBranch collapse_at_polarizer(const TriphotonState& state, Photon photon, Angle theta_p);

// Probability that photon b also passes once photon a has passed:
// cos^2 a cos^2 b + sin^2 a sin^2 b.
double cascade_pass_ab(Angle theta_a, Angle theta_b);

// Triple counting rate of the sequential-collapse model, closed form:
//   (cos a cos b sin c + sin a sin b cos c)^2 / 2.
double triple_rate_collapse(Angle theta_a, Angle theta_b, Angle theta_c);

// The same rate computed by chaining three collapses a -> b -> c.
double triple_rate_cascade(Angle theta_a, Angle theta_b, Angle theta_c);

// Experimental: cascade with an arbitrary polarizer order.  Orders other
// than a -> b -> c are outside the derivation the closed form comes from.
double triple_rate_cascade_ordered(Angle theta_a, Angle theta_b, Angle theta_c,
                                   const std::array<Photon, 3>& order);

// Probabilities of all 2^3 pass/absorb outcomes of the cascade.
// Index: bit 2 = a passed, bit 1 = b passed, bit 0 = c passed.
std::array<double, 8> branch_distribution(Angle theta_a, Angle theta_b, Angle theta_c);

// Single-mode density matrix over {horizontal, vertical, vacuum} together
// with the polarizer coupling g and the traversal time dt.
struct PolarizerDensity {
  std::array<Complex, 9> rho{};  // row-major 3x3
  double g = 1.0;
  double dt = 1.0;

  Complex& at(int i, int j) { return rho[3 * i + j]; }
  Complex at(int i, int j) const { return rho[3 * i + j]; }
  double trace_real() const { return (at(0, 0) + at(1, 1) + at(2, 2)).real(); }
};

// Integrates rho' = g a(theta_p + pi/2) rho a(theta_p + pi/2)^H over dt
// with a classical Runge-Kutta step.  In the single-photon-or-vacuum
// sector a rho a^H moves the blocked-line population to vacuum and a second
// application vanishes, so the exact solution is
//   rho(dt) = rho(0) + g dt a rho(0) a^H.
// Non-Hermitian or indefinite input is an error.  Note the generator is
// not trace preserving; the trace grows by g dt times the blocked-line
// population.
PolarizerDensity master_equation_step(const PolarizerDensity& rho, Angle theta_p);

// Pass/blocked populations of the photon sector along theta_p.
double blocked_population(const PolarizerDensity& rho, Angle theta_p);

// Conjectured triple rate for a delta-constrained source:
//   k cos^2(theta_c - theta_b - theta_a),  k > 0 supplied by the caller.
double conjectured_mrf_triple_rate(Angle theta_a, Angle theta_b, Angle theta_c, double k);

}  // namespace mrfoptics::triphoton
