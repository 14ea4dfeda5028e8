#pragma once

#include <climits>
#include <functional>
#include <string>
#include <vector>

#include "mrfoptics/angle.hpp"
#include "mrfoptics/errors.hpp"

namespace mrfoptics {

// Discretization of the outcome space: n angle bins per period pi
// (step dtheta = pi/n) and a concrete small absorption weight alpha.
struct GridSpec {
  int n = 720;
  double alpha = 1e-3;

  GridSpec() = default;
  GridSpec(int bins, double a) : n(bins), alpha(a) {
    if (n < 4) throw std::invalid_argument("GridSpec: n must be >= 4");
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("GridSpec: alpha must lie in (0, 1)");
    }
  }

  double step() const { return kPi / n; }

  // Nearest bin with mod-pi wraparound; ties round up.
  int bin_of(double radians) const {
    const double canonical = Angle::canonicalize(radians);
    int b = static_cast<int>(std::llround(canonical / step())) % n;
    if (b < 0) b += n;
    return b;
  }
  int bin_of(Angle a) const { return bin_of(a.value()); }

  double angle_of(int bin) const { return bin * step(); }
  Angle snap(Angle a) const { return Angle(angle_of(bin_of(a))); }

  // Grid equality uses the step as quantum.
  bool grid_equal(Angle a, Angle b) const { return bin_of(a) == bin_of(b); }
};

enum class VarKind { AngleBin, Boolean, Sign };

// Declaration of one outcome variable.  An angle variable may carry a gate:
// the index of a Boolean variable that says whether the photon it describes
// exists.  When the gate is 0 the angle is pinned to a placeholder bin and
// contributes no dtheta measure (no photon, no polarization degree of
// freedom); when the gate is 1 it ranges over the full grid.
struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Boolean;
  int gate = -1;
};

inline constexpr int kUnassigned = INT_MIN;

// Read-only view of a (possibly partial) grid assignment.
class Assignment {
 public:
  Assignment(const std::vector<int>& values, const std::vector<VarDecl>& vars,
             const GridSpec& grid)
      : values_(&values), vars_(&vars), grid_(&grid) {}

  int raw(int var) const {
    const int v = (*values_)[var];
    if (v == kUnassigned) {
      throw std::invalid_argument("unassigned variable: " + (*vars_)[var].name);
    }
    return v;
  }

  double angle(int var) const { return grid_->angle_of(raw(var)); }
  int bin(int var) const { return raw(var); }
  bool flag(int var) const { return raw(var) != 0; }
  int sign(int var) const { return raw(var); }

  bool angle_live(int var) const {
    const int gate = (*vars_)[var].gate;
    return gate < 0 || raw(gate) == 1;
  }

  const GridSpec& grid() const { return *grid_; }

 private:
  const std::vector<int>* values_;
  const std::vector<VarDecl>* vars_;
  const GridSpec* grid_;
};

// A component model p_i*(X): a nonnegative function of the variables it
// neighbors.  Factors must not read variables outside `vars`.
struct Factor {
  std::string name;
  std::vector<int> vars;
  std::function<double(const Assignment&)> eval;
};

struct GridModel {
  GridSpec grid;
  std::vector<VarDecl> vars;
  std::vector<Factor> factors;

  void validate() const;
};

using Predicate = std::function<bool(const Assignment&)>;

// Product of all factor evaluations on a full assignment (Markov random
// field relative probability).  Zero short-circuits; an unassigned variable
// referenced by a factor raises an input error naming the variable.
double product_relative_probability(const GridModel& model, const std::vector<int>& values);

struct EventMasses {
  double condition_mass = 0.0;          // total mass of the conditioning event
  std::vector<double> event_masses;     // mass of condition AND event_i
};

// Exhaustive sum over all admissible grid assignments of the factor product
// times dtheta per live angle variable.  Branches where any factor is zero
// are pruned.  The summation order (declaration order, ascending domain
// values) is the canonical reduction order; results are deterministic for
// fixed inputs.
EventMasses accumulate_event_masses(const GridModel& model, const Predicate& condition,
                                    const std::vector<Predicate>& events);

double partition_function_grid(const GridModel& model, const Predicate& condition);

// (mass of condition AND event) / (mass of condition).
// Z = 0 means the model assigns no mass to the conditioning event and is a
// normalization error, never a silent 0/0.
double event_probability_grid(const GridModel& model, const Predicate& condition,
                              const Predicate& event);

}  // namespace mrfoptics
