#include "mrfoptics/outcome_class.hpp"

#include <limits>
#include <optional>

namespace mrfoptics {

bool constraints_consistent(const std::vector<AngleConstraint>& constraints) {
  // Union-find with a quarter-turn parity relative to each root.
  std::map<std::string, std::pair<std::string, int>> parent;  // node -> (parent, parity)

  std::function<std::pair<std::string, int>(const std::string&)> find =
      [&](const std::string& node) -> std::pair<std::string, int> {
    auto it = parent.find(node);
    if (it == parent.end()) {
      parent[node] = {node, 0};
      return {node, 0};
    }
    if (it->second.first == node) return {node, 0};
    auto [root, parity] = find(it->second.first);
    it->second = {root, (it->second.second + parity) & 1};
    return it->second;
  };

  for (const auto& c : constraints) {
    const int parity = c.quarter_turns == 0 ? 0 : 1;
    auto [ra, pa] = find(c.lhs);
    auto [rb, pb] = find(c.rhs);
    if (ra == rb) {
      if (((pa + pb) & 1) != parity) return false;
    } else {
      parent[ra] = {rb, (pa + pb + parity) & 1};
    }
  }
  return true;
}

std::vector<OutcomeClass> reduce_leading_order(std::vector<OutcomeClass> classes) {
  int min_power = std::numeric_limits<int>::max();
  for (const auto& c : classes) {
    if (auto lead = c.mass.leading_term()) min_power = std::min(min_power, lead->power);
  }
  std::vector<OutcomeClass> out;
  for (auto& c : classes) {
    auto lead = c.mass.leading_term();
    if (lead && lead->power == min_power) {
      c.mass = c.mass.truncated_to_power(min_power);
      out.push_back(std::move(c));
    }
  }
  return out;
}

double normalize_classes(const std::vector<OutcomeClass>& classes, const ClassPredicate& event) {
  std::optional<int> power;
  double total = 0.0;
  double selected = 0.0;
  for (const auto& c : classes) {
    for (const auto& term : c.mass.terms()) {
      if (term.coeff == 0.0) continue;
      if (power && term.power != *power) {
        throw std::invalid_argument(
            "normalize_classes: classes mix alpha powers; run reduce_leading_order first");
      }
      power = term.power;
      total += term.coeff;
      if (event(c)) selected += term.coeff;
    }
  }
  if (total <= 0.0) {
    throw NormalizationError("normalize_classes: zero total class mass");
  }
  return selected / total;
}

}  // namespace mrfoptics
