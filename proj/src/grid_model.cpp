#include "mrfoptics/grid_model.hpp"

#include <algorithm>

namespace mrfoptics {

void GridModel::validate() const {
  const int count = static_cast<int>(vars.size());
  for (int i = 0; i < count; ++i) {
    const VarDecl& v = vars[i];
    if (v.gate >= 0) {
      if (v.kind != VarKind::AngleBin) {
        throw std::invalid_argument("GridModel: only angle variables may be gated ('" +
                                    v.name + "')");
      }
      if (v.gate >= i) {
        throw std::invalid_argument("GridModel: gate of '" + v.name +
                                    "' must be declared before it");
      }
      if (vars[v.gate].kind != VarKind::Boolean) {
        throw std::invalid_argument("GridModel: gate of '" + v.name + "' must be Boolean");
      }
    }
  }
  for (const Factor& f : factors) {
    for (int v : f.vars) {
      if (v < 0 || v >= count) {
        throw std::invalid_argument("GridModel: factor '" + f.name +
                                    "' references an unknown variable index");
      }
    }
    if (!f.eval) {
      throw std::invalid_argument("GridModel: factor '" + f.name + "' has no evaluator");
    }
  }
}

double product_relative_probability(const GridModel& model, const std::vector<int>& values) {
  if (values.size() != model.vars.size()) {
    throw std::invalid_argument("product_relative_probability: assignment size mismatch");
  }
  Assignment asg(values, model.vars, model.grid);
  double product = 1.0;
  for (const Factor& f : model.factors) {
    for (int v : f.vars) asg.raw(v);  // surfaces "unassigned variable: <name>"
    const double value = f.eval(asg);
    if (value < 0.0) {
      throw std::domain_error("factor '" + f.name + "' returned a negative value");
    }
    if (value == 0.0) return 0.0;
    product *= value;
  }
  return product;
}

namespace {

struct Enumerator {
  const GridModel& model;
  const Predicate& condition;
  const std::vector<Predicate>& events;
  std::vector<int> values;
  Assignment asg;
  std::vector<std::vector<int>> due;  // factors evaluable once var i is assigned
  EventMasses out;

  Enumerator(const GridModel& m, const Predicate& cond, const std::vector<Predicate>& evs)
      : model(m),
        condition(cond),
        events(evs),
        values(m.vars.size(), kUnassigned),
        asg(values, m.vars, m.grid),
        due(m.vars.size()) {
    out.event_masses.assign(events.size(), 0.0);
    for (int fi = 0; fi < static_cast<int>(model.factors.size()); ++fi) {
      const auto& fv = model.factors[fi].vars;
      const int last = fv.empty() ? 0 : *std::max_element(fv.begin(), fv.end());
      due[last].push_back(fi);
    }
  }

  void leaf(double weight) {
    if (!condition(asg)) return;
    out.condition_mass += weight;
    for (size_t i = 0; i < events.size(); ++i) {
      if (events[i](asg)) out.event_masses[i] += weight;
    }
  }

  // Assign values[var] = value, fold in the factors that become evaluable,
  // and descend unless some factor vanished.
  void try_value(int var, int value, double weight) {
    values[var] = value;
    for (int fi : due[var]) {
      const Factor& f = model.factors[fi];
      const double fv = f.eval(asg);
      if (fv < 0.0) {
        throw std::domain_error("factor '" + f.name + "' returned a negative value");
      }
      if (fv == 0.0) return;
      weight *= fv;
    }
    descend(var + 1, weight);
  }

  void descend(int var, double weight) {
    if (var == static_cast<int>(model.vars.size())) {
      leaf(weight);
      return;
    }
    const VarDecl& decl = model.vars[var];
    switch (decl.kind) {
      case VarKind::Boolean:
        for (int v = 0; v <= 1; ++v) try_value(var, v, weight);
        break;
      case VarKind::Sign:
        try_value(var, -1, weight);
        try_value(var, +1, weight);
        break;
      case VarKind::AngleBin: {
        const bool live = decl.gate < 0 || values[decl.gate] == 1;
        if (!live) {
          try_value(var, 0, weight);  // placeholder bin, no measure
        } else {
          const double w = weight * model.grid.step();
          for (int b = 0; b < model.grid.n; ++b) try_value(var, b, w);
        }
        break;
      }
    }
    values[var] = kUnassigned;
  }
};

}  // namespace

EventMasses accumulate_event_masses(const GridModel& model, const Predicate& condition,
                                    const std::vector<Predicate>& events) {
  model.validate();
  Enumerator e(model, condition, events);
  e.descend(0, 1.0);
  return e.out;
}

double partition_function_grid(const GridModel& model, const Predicate& condition) {
  return accumulate_event_masses(model, condition, {}).condition_mass;
}

double event_probability_grid(const GridModel& model, const Predicate& condition,
                              const Predicate& event) {
  const EventMasses masses = accumulate_event_masses(model, condition, {event});
  if (masses.condition_mass <= 0.0) {
    throw NormalizationError("partition function is zero under the conditioning event");
  }
  return masses.event_masses[0] / masses.condition_mass;
}

}  // namespace mrfoptics
