#include "mrfoptics/bell_models.hpp"

#include <cmath>
#include <memory>

#include "mrfoptics/kqed.hpp"

namespace mrfoptics::bell {

namespace {

void require_gamma(int gamma, const char* name) {
  if (gamma != 0 && gamma != 1) {
    throw std::invalid_argument(std::string(name) + " must be 0 or 1");
  }
}

void require_sign(int d, const char* name) {
  if (d != -1 && d != 1) {
    throw std::invalid_argument(std::string(name) + " must be -1 or +1");
  }
}

// Distance between two directions, mod pi.
double direction_distance(Angle a, Angle b) {
  double d = std::abs(a.value() - b.value());
  return std::min(d, kPi - d);
}

}  // namespace

AlphaWeight counter_factor(int gamma_det, Angle /*theta_det*/) {
  require_gamma(gamma_det, "gamma_det");
  return gamma_det == 0 ? AlphaWeight(1.0, 0) : AlphaWeight(1.0, 1);
}

double source_factor_mrf1(Angle theta_src_l, Angle theta_src_r, const GridSpec& grid) {
  return grid.grid_equal(theta_src_l, theta_src_r) ? 1.0 / grid.step() : 0.0;
}

double source_factor_mrf2(Angle theta_src_l, Angle theta_src_r, int d_l, int d_r,
                          const GridSpec& grid) {
  require_sign(d_l, "d_l");
  require_sign(d_r, "d_r");
  if (!grid.grid_equal(theta_src_l, theta_src_r)) return 0.0;
  return (1.0 - d_l * d_r) / grid.step();
}

std::vector<FactorTerm> polarizer_terms_mrf1(int gamma_src, Angle theta_src, int gamma_det,
                                             Angle theta_det, Angle theta_tune,
                                             const GridSpec* grid) {
  require_gamma(gamma_src, "gamma_src");
  require_gamma(gamma_det, "gamma_det");

  const auto equal = [grid](Angle x, Angle y) {
    return grid ? grid->grid_equal(x, y) : x == y;
  };
  const Angle blocked = theta_tune.orthogonal();

  std::vector<FactorTerm> terms;
  if (gamma_src == 1 && gamma_det == 1) {
    if (equal(theta_det, theta_src) && equal(theta_src, theta_tune)) {
      terms.push_back({1.0, 0, 2});  // pass-through anchor
    }
    if (equal(theta_det, theta_src)) {
      terms.push_back({cos2(theta_src - theta_tune), 1, 1});  // classical transmission
    }
    if (equal(theta_src, theta_tune)) {
      terms.push_back({cos2(theta_det - theta_tune), 1, 1});
    }
  } else if (gamma_src == 1 && gamma_det == 0) {
    if (equal(theta_src, blocked)) {
      terms.push_back({1.0, 1, 1});  // blocked-line absorption anchor
    }
    terms.push_back({sin2(theta_src - theta_tune), 2, 0});
  } else if (gamma_src == 0 && gamma_det == 1) {
    if (equal(theta_det, blocked)) {
      terms.push_back({1.0, 1, 1});
    }
    terms.push_back({sin2(theta_det - theta_tune), 2, 0});
  }
  return terms;
}

AlphaPolynomial polarizer_factor_mrf1(int gamma_src, Angle theta_src, int gamma_det,
                                      Angle theta_det, Angle theta_tune, const GridSpec* grid) {
  AlphaPolynomial poly;
  for (const FactorTerm& t :
       polarizer_terms_mrf1(gamma_src, theta_src, gamma_det, theta_det, theta_tune, grid)) {
    poly.add(AlphaWeight(t.coeff, t.alpha_power));
  }
  return poly;
}

AlphaPolynomial polarizer_factor_mrf2(int gamma_src, Angle theta_src, int gamma_det,
                                      Angle theta_det, int d, Angle theta_tune) {
  require_gamma(gamma_src, "gamma_src");
  require_gamma(gamma_det, "gamma_det");
  require_sign(d, "d");

  AlphaPolynomial poly;
  const double pass = (cos2(theta_src - theta_tune) * (1 + d) +
                       cos2(theta_det - theta_tune) * (1 - d)) *
                      gamma_src * gamma_det;
  poly.add(AlphaWeight(pass, 0));
  const double absorb = sin2(theta_src - theta_tune) * (1 + d) * gamma_src * (1 - gamma_det) +
                        sin2(theta_det - theta_tune) * (1 - d) * (1 - gamma_src) * gamma_det;
  poly.add(AlphaWeight(absorb, 1));
  return poly;
}

// ---------------------------------------------------------------------------
// Class enumeration.
// ---------------------------------------------------------------------------

namespace {

void require_nondegenerate(const BellConfig& config) {
  const double phi = config.phi().value();
  if (phi == 0.0) {
    throw DegenerateAnglesError("tunings are equal; leading-order subsets coincide");
  }
  if (phi == kHalfPi) {
    throw DegenerateAnglesError("tunings are orthogonal; leading-order subsets coincide");
  }
}

std::string channel_label(const char* subset, const char* channel) {
  return std::string(subset) + "/" + channel;
}

// The four subsets anchored on one channel of the transparent model.
// `tune` names the anchored tuning parameter; `other_weight_pass` and
// `other_weight_absorb` are cos^2/sin^2 of the tuning difference as seen by
// the partner polarizer.
std::vector<OutcomeClass> mrf1_anchor_classes(const char* channel, const std::string& tune,
                                              const std::string& src_anchor_side,
                                              const std::string& src_other_side,
                                              const std::string& det_anchor_side,
                                              const std::string& det_other_side, double c2_phi,
                                              double s2_phi) {
  std::vector<OutcomeClass> classes;

  OutcomeClass dc;
  dc.label = channel_label(kLabelCoincidence, channel);
  dc.constraints = {{src_anchor_side, tune, 0},
                    {src_other_side, src_anchor_side, 0},
                    {det_anchor_side, src_anchor_side, 0},
                    {det_other_side, src_other_side, 0}};
  dc.booleans = {{"gamma_src_L", 1}, {"gamma_src_R", 1}, {"gamma_det_L", 1}, {"gamma_det_R", 1}};
  dc.mass.add(AlphaWeight(c2_phi, 3));
  classes.push_back(dc);

  OutcomeClass ka;
  ka.label = channel_label(kLabelKlyshkoAbsorb, channel);
  ka.constraints = {{src_anchor_side, tune, 0},
                    {src_other_side, src_anchor_side, 0},
                    {det_anchor_side, src_anchor_side, 0}};
  ka.booleans = {{"gamma_src_L", 1}, {"gamma_src_R", 1}};
  ka.booleans[det_anchor_side == "theta_det_L" ? "gamma_det_L" : "gamma_det_R"] = 1;
  ka.booleans[det_anchor_side == "theta_det_L" ? "gamma_det_R" : "gamma_det_L"] = 0;
  ka.mass.add(AlphaWeight(s2_phi, 3));
  classes.push_back(ka);

  OutcomeClass ad;
  ad.label = channel_label(kLabelAntiDouble, channel);
  ad.constraints = {{src_anchor_side, tune, 1}, {src_other_side, src_anchor_side, 0}};
  ad.booleans = {{"gamma_src_L", 1}, {"gamma_src_R", 1}, {"gamma_det_L", 0}, {"gamma_det_R", 0}};
  ad.mass.add(AlphaWeight(c2_phi, 3));
  classes.push_back(ad);

  OutcomeClass as;
  as.label = channel_label(kLabelAntiSingle, channel);
  as.constraints = {{src_anchor_side, tune, 1},
                    {src_other_side, src_anchor_side, 0},
                    {det_other_side, src_other_side, 0}};
  as.booleans = {{"gamma_src_L", 1}, {"gamma_src_R", 1}};
  as.booleans[det_anchor_side == "theta_det_L" ? "gamma_det_L" : "gamma_det_R"] = 0;
  as.booleans[det_anchor_side == "theta_det_L" ? "gamma_det_R" : "gamma_det_L"] = 1;
  as.mass.add(AlphaWeight(s2_phi, 3));
  classes.push_back(as);

  return classes;
}

}  // namespace

std::vector<OutcomeClass> enumerate_channel_classes_mrf1(const BellConfig& config) {
  require_nondegenerate(config);
  const double c2_phi = cos2(config.phi());
  const double s2_phi = sin2(config.phi());

  std::vector<OutcomeClass> classes =
      mrf1_anchor_classes("left", "theta_a", "theta_src_L", "theta_src_R", "theta_det_L",
                          "theta_det_R", c2_phi, s2_phi);
  std::vector<OutcomeClass> right =
      mrf1_anchor_classes("right", "theta_b", "theta_src_R", "theta_src_L", "theta_det_R",
                          "theta_det_L", c2_phi, s2_phi);
  classes.insert(classes.end(), right.begin(), right.end());
  return classes;
}

std::vector<OutcomeClass> enumerate_classes_mrf1(const BellConfig& config) {
  std::vector<OutcomeClass> channels = enumerate_channel_classes_mrf1(config);
  std::vector<OutcomeClass> merged;
  for (const char* label :
       {kLabelCoincidence, kLabelKlyshkoAbsorb, kLabelAntiDouble, kLabelAntiSingle}) {
    OutcomeClass m;
    m.label = label;
    bool first = true;
    for (const auto& c : channels) {
      if (c.label.rfind(label, 0) != 0) continue;
      m.mass = m.mass + c.mass;
      if (first) {  // keep the left-anchored representative structure
        m.constraints = c.constraints;
        m.booleans = c.booleans;
        m.free_angles = c.free_angles;
        first = false;
      }
    }
    merged.push_back(std::move(m));
  }
  return merged;
}

std::vector<OutcomeClass> enumerate_channel_classes_mrf2(const BellConfig& config) {
  require_nondegenerate(config);
  const double c2_phi = cos2(config.phi());
  const double s2_phi = sin2(config.phi());

  std::vector<OutcomeClass> classes;

  // orientation: which channel carries the leg running from counter to
  // source.  The reversed leg's polarizer pins the shared source
  // polarization to its tuning (or to the blocked line for the
  // anti-Klyshko subsets); the partner leg runs forward and is filtered
  // classically.  Uniform averaging over the reversed counter's
  // polarization contributes the 1/2.
  struct Orientation {
    const char* name;
    std::string reversed_tune;   // tuning parameter of the reversed leg
    std::string src_rev;         // source-side angle of the reversed leg
    std::string src_fwd;
    std::string det_rev;         // counter-side angle of the reversed leg
    std::string det_fwd;
    const char* gamma_det_rev;
    const char* gamma_det_fwd;
    int d_rev_l;  // d values per channel for this orientation
    int d_rev_r;
  };
  const Orientation orientations[2] = {
      {"reversed_right", "theta_b", "theta_src_R", "theta_src_L", "theta_det_R", "theta_det_L",
       "gamma_det_R", "gamma_det_L", +1, -1},
      {"reversed_left", "theta_a", "theta_src_L", "theta_src_R", "theta_det_L", "theta_det_R",
       "gamma_det_L", "gamma_det_R", -1, +1},
  };

  for (const Orientation& o : orientations) {
    const std::map<std::string, int> base_booleans = {
        {"gamma_src_L", 1}, {"gamma_src_R", 1}, {"d_L", o.d_rev_l}, {"d_R", o.d_rev_r}};

    OutcomeClass dc;
    dc.label = channel_label(kLabelCoincidence, o.name);
    dc.constraints = {{o.src_rev, o.reversed_tune, 0},
                      {o.src_fwd, o.src_rev, 0},
                      {o.det_fwd, o.reversed_tune == "theta_b" ? "theta_a" : "theta_b", 0}};
    dc.booleans = base_booleans;
    dc.booleans[o.gamma_det_rev] = 1;
    dc.booleans[o.gamma_det_fwd] = 1;
    dc.free_angles = {o.det_rev};
    dc.mass.add(AlphaWeight(0.5 * c2_phi, 2));
    classes.push_back(dc);

    OutcomeClass ka;
    ka.label = channel_label(kLabelKlyshkoAbsorb, o.name);
    ka.constraints = {{o.src_rev, o.reversed_tune, 0}, {o.src_fwd, o.src_rev, 0}};
    ka.booleans = base_booleans;
    ka.booleans[o.gamma_det_rev] = 1;
    ka.booleans[o.gamma_det_fwd] = 0;
    ka.free_angles = {o.det_rev};
    ka.mass.add(AlphaWeight(0.5 * s2_phi, 2));
    classes.push_back(ka);

    OutcomeClass ad;
    ad.label = channel_label(kLabelAntiDouble, o.name);
    ad.constraints = {{o.src_rev, o.reversed_tune, 1}, {o.src_fwd, o.src_rev, 0}};
    ad.booleans = base_booleans;
    ad.booleans[o.gamma_det_rev] = 0;
    ad.booleans[o.gamma_det_fwd] = 0;
    ad.mass.add(AlphaWeight(0.5 * c2_phi, 2));
    classes.push_back(ad);

    OutcomeClass as;
    as.label = channel_label(kLabelAntiSingle, o.name);
    as.constraints = {{o.src_rev, o.reversed_tune, 1},
                      {o.src_fwd, o.src_rev, 0},
                      {o.det_fwd, o.reversed_tune == "theta_b" ? "theta_a" : "theta_b", 0}};
    as.booleans = base_booleans;
    as.booleans[o.gamma_det_rev] = 0;
    as.booleans[o.gamma_det_fwd] = 1;
    as.mass.add(AlphaWeight(0.5 * s2_phi, 2));
    classes.push_back(as);
  }
  return classes;
}

std::vector<OutcomeClass> enumerate_classes_mrf2(const BellConfig& config) {
  std::vector<OutcomeClass> channels = enumerate_channel_classes_mrf2(config);
  std::vector<OutcomeClass> merged;
  for (const char* label :
       {kLabelCoincidence, kLabelKlyshkoAbsorb, kLabelAntiDouble, kLabelAntiSingle}) {
    OutcomeClass m;
    m.label = label;
    bool first = true;
    for (const auto& c : channels) {
      if (c.label.rfind(label, 0) != 0) continue;
      m.mass = m.mass + c.mass;
      if (first) {
        m.constraints = c.constraints;
        m.booleans = c.booleans;
        m.free_angles = c.free_angles;
        first = false;
      }
    }
    merged.push_back(std::move(m));
  }
  return merged;
}

BellRates bell_rates(const BellConfig& config) {
  const double phi = config.phi().value();
  const bool degenerate_input = (phi == 0.0 || phi == kHalfPi);

  BellRates rates;
  rates.degenerate = degenerate_input;

  if (config.model == Model::kqed) {
    const kqed::JointOutcomeRates r = kqed::outcome_rates(config.theta_a, config.theta_b);
    rates.coincidence = r.both_pass;
    rates.klyshko_absorb = r.left_only;
    rates.anti_single = r.right_only;
    rates.anti_double_absorb = r.neither;
    return rates;
  }

  try {
    std::vector<OutcomeClass> classes = config.model == Model::mrf1
                                            ? enumerate_classes_mrf1(config)
                                            : enumerate_classes_mrf2(config);
    classes = reduce_leading_order(std::move(classes));
    const auto by_label = [&classes](const char* label) {
      return normalize_classes(classes,
                               [label](const OutcomeClass& c) { return c.label == label; });
    };
    rates.coincidence = by_label(kLabelCoincidence);
    rates.klyshko_absorb = by_label(kLabelKlyshkoAbsorb);
    rates.anti_double_absorb = by_label(kLabelAntiDouble);
    rates.anti_single = by_label(kLabelAntiSingle);
  } catch (const DegenerateAnglesError&) {
    // The subsets coincide, but the normalized rates are continuous in the
    // tuning difference; report the continuous limit.
    const double c2_phi = cos2(phi);
    const double s2_phi = sin2(phi);
    rates.coincidence = 0.5 * c2_phi;
    rates.klyshko_absorb = 0.5 * s2_phi;
    rates.anti_double_absorb = 0.5 * c2_phi;
    rates.anti_single = 0.5 * s2_phi;
    rates.degenerate = true;
  }
  return rates;
}

// ---------------------------------------------------------------------------
// Grid realization (transparent model).
// ---------------------------------------------------------------------------

BellGridOracle build_bell_grid_mrf1(const BellConfig& config, int n) {
  if (n % 2 != 0) {
    throw std::invalid_argument(
        "build_bell_grid_mrf1: n must be even so blocked-line anchors land on bins");
  }
  const GridSpec grid(n, config.alpha);

  BellGridOracle oracle;
  oracle.model.grid = grid;
  oracle.theta_a_snapped = grid.snap(config.theta_a);
  oracle.theta_b_snapped = grid.snap(config.theta_b);
  oracle.snap_distance = direction_distance(oracle.theta_a_snapped, config.theta_a) +
                         direction_distance(oracle.theta_b_snapped, config.theta_b);

  enum Var : int {
    kGammaSrcL = 0,
    kGammaSrcR,
    kGammaDetL,
    kGammaDetR,
    kThetaSrcL,
    kThetaSrcR,
    kThetaDetL,
    kThetaDetR
  };
  oracle.model.vars = {
      {"gamma_src_L", VarKind::Boolean, -1}, {"gamma_src_R", VarKind::Boolean, -1},
      {"gamma_det_L", VarKind::Boolean, -1}, {"gamma_det_R", VarKind::Boolean, -1},
      {"theta_src_L", VarKind::AngleBin, kGammaSrcL},
      {"theta_src_R", VarKind::AngleBin, kGammaSrcR},
      {"theta_det_L", VarKind::AngleBin, kGammaDetL},
      {"theta_det_R", VarKind::AngleBin, kGammaDetR},
  };

  // cos^2 / sin^2 by bin difference, shared by both polarizers.
  auto cos2_tab = std::make_shared<std::vector<double>>(n);
  for (int k = 0; k < n; ++k) (*cos2_tab)[k] = cos2(k * grid.step());

  const double alpha = config.alpha;
  const double inv = 1.0 / grid.step();
  const int a_bin = grid.bin_of(config.theta_a);
  const int b_bin = grid.bin_of(config.theta_b);
  const int a_orth = (a_bin + n / 2) % n;
  const int b_orth = (b_bin + n / 2) % n;

  const auto polarizer = [cos2_tab, alpha, inv, n](int tune_bin, int orth_bin, int g_src_var,
                                                   int g_det_var, int s_var, int t_var) {
    return [=](const Assignment& asg) -> double {
      const bool g_src = asg.flag(g_src_var);
      const bool g_det = asg.flag(g_det_var);
      double v = 0.0;
      if (g_src && g_det) {
        const int s = asg.bin(s_var);
        const int t = asg.bin(t_var);
        if (t == s && s == tune_bin) v += inv * inv;
        if (t == s) v += alpha * (*cos2_tab)[(s - tune_bin + n) % n] * inv;
        if (s == tune_bin) v += alpha * (*cos2_tab)[(t - tune_bin + n) % n] * inv;
      } else if (g_src && !g_det) {
        const int s = asg.bin(s_var);
        if (s == orth_bin) v += alpha * inv;
        v += alpha * alpha * (1.0 - (*cos2_tab)[(s - tune_bin + n) % n]);
      } else if (!g_src && g_det) {
        const int t = asg.bin(t_var);
        if (t == orth_bin) v += alpha * inv;
        v += alpha * alpha * (1.0 - (*cos2_tab)[(t - tune_bin + n) % n]);
      }
      return v;
    };
  };

  oracle.model.factors = {
      {"source",
       {kGammaSrcL, kGammaSrcR, kThetaSrcL, kThetaSrcR},
       [inv](const Assignment& asg) -> double {
         if (!asg.flag(kGammaSrcL) || !asg.flag(kGammaSrcR)) return 0.0;
         return asg.bin(kThetaSrcL) == asg.bin(kThetaSrcR) ? inv : 0.0;
       }},
      {"polarizer_L",
       {kGammaSrcL, kGammaDetL, kThetaSrcL, kThetaDetL},
       polarizer(a_bin, a_orth, kGammaSrcL, kGammaDetL, kThetaSrcL, kThetaDetL)},
      {"polarizer_R",
       {kGammaSrcR, kGammaDetR, kThetaSrcR, kThetaDetR},
       polarizer(b_bin, b_orth, kGammaSrcR, kGammaDetR, kThetaSrcR, kThetaDetR)},
      {"counter_L",
       {kGammaDetL, kThetaDetL},
       [alpha](const Assignment& asg) { return asg.flag(kGammaDetL) ? alpha : 1.0; }},
      {"counter_R",
       {kGammaDetR, kThetaDetR},
       [alpha](const Assignment& asg) { return asg.flag(kGammaDetR) ? alpha : 1.0; }},
  };

  oracle.condition = [](const Assignment& asg) {
    return asg.flag(kGammaSrcL) && asg.flag(kGammaSrcR);
  };

  // The gamma pattern fixes the subset except for the single-counter
  // patterns, where the shared source polarization separates the anchored
  // subset from the blocked-line one.
  oracle.field_events = {
      [](const Assignment& asg) { return asg.flag(kGammaDetL) && asg.flag(kGammaDetR); },
      [b_orth, a_orth](const Assignment& asg) {
        const bool l = asg.flag(kGammaDetL);
        const bool r = asg.flag(kGammaDetR);
        if (l == r) return false;
        const int s = asg.bin(kThetaSrcL);
        return l ? s != b_orth : s != a_orth;
      },
      [](const Assignment& asg) { return !asg.flag(kGammaDetL) && !asg.flag(kGammaDetR); },
      [b_orth, a_orth](const Assignment& asg) {
        const bool l = asg.flag(kGammaDetL);
        const bool r = asg.flag(kGammaDetR);
        if (l == r) return false;
        const int s = asg.bin(kThetaSrcL);
        return l ? s == b_orth : s == a_orth;
      },
  };

  return oracle;
}

GridFieldResult grid_field_probabilities(const BellGridOracle& oracle) {
  const EventMasses masses =
      accumulate_event_masses(oracle.model, oracle.condition, oracle.field_events);
  if (masses.condition_mass <= 0.0) {
    throw NormalizationError(
        "bell grid oracle: zero conditioned mass (grid too coarse to hit delta constraints)");
  }
  GridFieldResult out;
  out.partition = masses.condition_mass;
  for (int i = 0; i < 4; ++i) {
    out.probabilities[i] = masses.event_masses[i] / masses.condition_mass;
  }
  return out;
}

}  // namespace mrfoptics::bell
