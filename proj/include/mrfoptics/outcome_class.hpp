#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mrfoptics/alpha_poly.hpp"
#include "mrfoptics/errors.hpp"

namespace mrfoptics {

// lhs = rhs + quarter_turns * (pi/2), directions mod pi.  Since a half turn
// is the identity on directions, the offset algebra is just the parity of
// quarter turns.  `rhs` may name another outcome variable or a tuning
// parameter such as "theta_a".
struct AngleConstraint {
  std::string lhs;
  std::string rhs;
  int quarter_turns = 0;  // 0 or +-1
};

// A symbolic subset of circuit outcomes: delta constraints pinning angle
// variables to each other or to tuning parameters, a fixed assignment of the
// Boolean (and sign) outcome variables, the angles integrated over freely,
// and the total relative-probability mass of the subset.
struct OutcomeClass {
  std::string label;
  std::vector<AngleConstraint> constraints;
  std::map<std::string, int> booleans;
  std::vector<std::string> free_angles;
  AlphaPolynomial mass;
};

// True iff no chain of constraints forces two different quarter-turn
// parities between the same pair of angles.
bool constraints_consistent(const std::vector<AngleConstraint>& constraints);

// Keeps only the classes whose mass has the globally minimal alpha power,
// truncating the masses to that power.  Empty input yields empty output.
// Idempotent.
std::vector<OutcomeClass> reduce_leading_order(std::vector<OutcomeClass> classes);

using ClassPredicate = std::function<bool(const OutcomeClass&)>;

// (sum of coefficients of event classes) / (sum over all classes).
// Requires the classes to share one alpha power (run reduce_leading_order
// first); a zero total is a normalization error.
double normalize_classes(const std::vector<OutcomeClass>& classes, const ClassPredicate& event);

}  // namespace mrfoptics
