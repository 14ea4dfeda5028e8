#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mrfoptics {

// One relative-probability contribution of the form coeff * alpha^power,
// with alpha the small counter/absorption weight.  Keeping the power as an
// integer makes the leading-order-in-alpha bookkeeping exact.
struct AlphaWeight {
  double coeff = 0.0;
  int power = 0;

  AlphaWeight() = default;
  AlphaWeight(double c, int p) : coeff(c), power(p) {
    if (!(c >= 0.0)) throw std::invalid_argument("AlphaWeight: coeff must be >= 0");
    if (p < 0) throw std::invalid_argument("AlphaWeight: power must be >= 0");
  }

  double evaluate(double alpha) const { return coeff * std::pow(alpha, power); }

  friend AlphaWeight operator*(AlphaWeight a, AlphaWeight b) {
    return AlphaWeight(a.coeff * b.coeff, a.power + b.power);
  }

  // Addition is only defined between equal powers; mixed-power sums live in
  // AlphaPolynomial.
  friend AlphaWeight operator+(AlphaWeight a, AlphaWeight b) {
    if (a.power != b.power) {
      throw std::invalid_argument("AlphaWeight: cannot add terms with different powers");
    }
    return AlphaWeight(a.coeff + b.coeff, a.power);
  }
};

// A sum of AlphaWeight terms with distinct powers, sorted ascending.
class AlphaPolynomial {
 public:
  AlphaPolynomial() = default;
  /*implicit*/ AlphaPolynomial(AlphaWeight w) { add(w); }

  void add(AlphaWeight w) {
    if (w.coeff == 0.0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w.power,
                               [](const AlphaWeight& t, int p) { return t.power < p; });
    if (it != terms_.end() && it->power == w.power) {
      it->coeff += w.coeff;
    } else {
      terms_.insert(it, w);
    }
  }

  const std::vector<AlphaWeight>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // The minimal-power term with coeff > 0, if any.
  std::optional<AlphaWeight> leading_term() const {
    for (const auto& t : terms_) {
      if (t.coeff > 0.0) return t;
    }
    return std::nullopt;
  }

  AlphaPolynomial truncated_to_power(int power) const {
    AlphaPolynomial out;
    for (const auto& t : terms_) {
      if (t.power == power) out.add(t);
    }
    return out;
  }

  double coefficient_at(int power) const {
    for (const auto& t : terms_) {
      if (t.power == power) return t.coeff;
    }
    return 0.0;
  }

  double evaluate(double alpha) const {
    double v = 0.0;
    for (const auto& t : terms_) v += t.evaluate(alpha);
    return v;
  }

  friend AlphaPolynomial operator+(const AlphaPolynomial& a, const AlphaPolynomial& b) {
    AlphaPolynomial out = a;
    for (const auto& t : b.terms_) out.add(t);
    return out;
  }

  friend AlphaPolynomial operator*(const AlphaPolynomial& a, AlphaWeight w) {
    AlphaPolynomial out;
    for (const auto& t : a.terms_) out.add(t * w);
    return out;
  }

  friend AlphaPolynomial operator*(const AlphaPolynomial& a, const AlphaPolynomial& b) {
    AlphaPolynomial out;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) out.add(ta * tb);
    }
    return out;
  }

 private:
  std::vector<AlphaWeight> terms_;
};

}  // namespace mrfoptics
