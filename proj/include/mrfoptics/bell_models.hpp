#pragma once

#include <array>
#include <string>
#include <vector>

#include "mrfoptics/alpha_poly.hpp"
#include "mrfoptics/angle.hpp"
#include "mrfoptics/grid_model.hpp"
#include "mrfoptics/outcome_class.hpp"

namespace mrfoptics::bell {

enum class Model { mrf1, mrf2, kqed };

// Polarizer tunings and the model used for prediction.  phi() is the
// canonical tuning difference; every rate depends on the tunings only
// through cos^2/sin^2 of it.
struct BellConfig {
  Angle theta_a;
  Angle theta_b;
  Model model = Model::kqed;
  double alpha = 1e-3;

  BellConfig() = default;
  BellConfig(Angle a, Angle b, Model m, double alpha_in = 1e-3)
      : theta_a(a), theta_b(b), model(m), alpha(alpha_in) {
    if (!(alpha > 0.0 && alpha <= 0.1)) {
      throw std::invalid_argument("BellConfig: alpha must lie in (0, 0.1]");
    }
  }

  Angle phi() const { return theta_a - theta_b; }
};

// Normalized masses of the four leading-order outcome subsets, conditional
// on the production of an entangled pair.  The four fields partition the
// conditioned outcome space and sum to 1.
struct BellRates {
  double coincidence = 0.0;        // both counters fire
  double klyshko_absorb = 0.0;     // anchored channel counts, partner absorbed
  double anti_double_absorb = 0.0; // blocked-line anchor, both absorbed
  double anti_single = 0.0;        // blocked-line anchor, partner counts
  bool degenerate = false;         // tunings equal or orthogonal; values are the
                                   // continuous limit

  double sum() const { return coincidence + klyshko_absorb + anti_double_absorb + anti_single; }
};

// ---------------------------------------------------------------------------
// Component models.
// ---------------------------------------------------------------------------

// Counter: weight 1 when no photon is registered, alpha (per unit of the
// uniform polarization measure) when one is.  Independent of the
// polarization and of any time-direction variable reaching the counter.
AlphaWeight counter_factor(int gamma_det, Angle theta_det);

// Entangled-pair source, transparent model: delta forcing the two
// source-side polarizations equal.  Grid value 1/dtheta on the diagonal.
double source_factor_mrf1(Angle theta_src_l, Angle theta_src_r, const GridSpec& grid);

// Expanded-model source: same delta times (1 - d_l * d_r), so the two legs
// must carry opposite time directions.  The factor keeps the value 2 on the
// admissible orientations; the constant cancels in every normalized rate.
double source_factor_mrf2(Angle theta_src_l, Angle theta_src_r, int d_l, int d_r,
                          const GridSpec& grid);

// One additive term of a polarizer factor: coeff * alpha^power, carrying
// `deltas` grid delta factors (each worth 1/dtheta when satisfied).
struct FactorTerm {
  double coeff = 0.0;
  int alpha_power = 0;
  int deltas = 0;
};

// Transparent-model polarizer as a term sum.  Three gamma patterns carry
// mass:
//   photon in and out:  pass-through anchor  delta(t - s) delta(s - tune)
//                       + alpha cos^2(s - tune) delta(t - s)
//                       + alpha cos^2(t - tune) delta(s - tune)
//   in, absorbed:       alpha delta(s - tune - pi/2) + alpha^2 sin^2(s - tune)
//   out, no source:     alpha delta(t - tune - pi/2) + alpha^2 sin^2(t - tune)
// The absorbed-photon patterns read gamma_src (1 - gamma_det) and its
// mirror; the printed gamma(1 - gamma) form vanishes identically for
// Boolean gamma and cannot reproduce the subset masses this factor is
// accountable to.
// When `grid` is null, delta satisfaction uses exact angle equality;
// otherwise grid-bin equality.
std::vector<FactorTerm> polarizer_terms_mrf1(int gamma_src, Angle theta_src, int gamma_det,
                                             Angle theta_det, Angle theta_tune,
                                             const GridSpec* grid = nullptr);

// Same factor as an alpha polynomial with satisfied deltas counted as 1.
AlphaPolynomial polarizer_factor_mrf1(int gamma_src, Angle theta_src, int gamma_det,
                                      Angle theta_det, Angle theta_tune,
                                      const GridSpec* grid = nullptr);

// Expanded-model polarizer, evaluated literally:
//   (cos^2(s - tune)(1 + d) + cos^2(t - tune)(1 - d)) gamma_src gamma_det
//   + alpha (sin^2(s - tune)(1 + d) gamma_src (1 - gamma_det)
//            + sin^2(t - tune)(1 - d)(1 - gamma_src) gamma_det)
// The caller enforces d_src = d_det = d.
AlphaPolynomial polarizer_factor_mrf2(int gamma_src, Angle theta_src, int gamma_det,
                                      Angle theta_det, int d, Angle theta_tune);

// ---------------------------------------------------------------------------
// Exact outcome-class accounting.
// ---------------------------------------------------------------------------

// The four leading-order subsets of the transparent model, channels merged:
//   {2 a^3 cos^2 phi, 2 a^3 sin^2 phi, 2 a^3 cos^2 phi, 2 a^3 sin^2 phi}.
// Throws DegenerateAnglesError when the tunings are equal or orthogonal.
std::vector<OutcomeClass> enumerate_classes_mrf1(const BellConfig& config);

// The same subsets split per anchored channel (eight classes).
std::vector<OutcomeClass> enumerate_channel_classes_mrf1(const BellConfig& config);

// Expanded-model subsets, orientations merged:
//   {a^2 cos^2 phi, a^2 sin^2 phi, a^2 cos^2 phi, a^2 sin^2 phi},  Z = 2 a^2.
std::vector<OutcomeClass> enumerate_classes_mrf2(const BellConfig& config);

// Split by which channel carries the reversed leg (eight classes).
std::vector<OutcomeClass> enumerate_channel_classes_mrf2(const BellConfig& config);

// Subset labels shared by both models.
inline constexpr const char* kLabelCoincidence = "double_coincidence";
inline constexpr const char* kLabelKlyshkoAbsorb = "klyshko_absorption";
inline constexpr const char* kLabelAntiDouble = "anti_double_absorption";
inline constexpr const char* kLabelAntiSingle = "anti_single_count";

// Normalized rates for the configured model.  Degenerate tunings yield the
// continuous-limit values with the degenerate flag set instead of an error.
BellRates bell_rates(const BellConfig& config);

// ---------------------------------------------------------------------------
// Grid realization of the transparent model (the numeric oracle).
// ---------------------------------------------------------------------------

struct BellGridOracle {
  GridModel model;
  Predicate condition;                  // both source photons produced
  std::vector<Predicate> field_events;  // one per BellRates field, in order
  Angle theta_a_snapped;
  Angle theta_b_snapped;
  double snap_distance = 0.0;  // sum of |snapped - requested| over both tunings
};

// Builds the six-variable factor model on an n-bin grid with the tunings
// snapped to bins.  n must be even so the blocked-line anchors land on
// exact bins.
BellGridOracle build_bell_grid_mrf1(const BellConfig& config, int n);

struct GridFieldResult {
  std::array<double, 4> probabilities{};  // coincidence, klyshko, anti-double, anti-single
  double partition = 0.0;
};

GridFieldResult grid_field_probabilities(const BellGridOracle& oracle);

}  // namespace mrfoptics::bell
