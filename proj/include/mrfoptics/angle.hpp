#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrfoptics {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// A linear-polarization direction in radians, canonical on [0, pi).
// Directions are mod pi: theta and theta + pi describe the same line,
// and every formula in this project uses cos^2/sin^2, which are
// pi-periodic.
class Angle {
 public:
  Angle() = default;

  explicit Angle(double radians) : value_(canonicalize(radians)) {}

  double value() const { return value_; }

  static double canonicalize(double x) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("Angle: value must be finite");
    }
    double r = std::fmod(x, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r = 0.0;  // fmod rounding can land exactly on pi
    return r;
  }

  Angle operator+(Angle other) const { return Angle(value_ + other.value_); }
  Angle operator-(Angle other) const { return Angle(value_ - other.value_); }
  Angle orthogonal() const { return Angle(value_ + kHalfPi); }

  friend bool operator==(Angle a, Angle b) { return a.value_ == b.value_; }
  friend bool operator!=(Angle a, Angle b) { return a.value_ != b.value_; }

 private:
  double value_ = 0.0;
};

inline double cos2(double x) {
  const double c = std::cos(x);
  return c * c;
}

inline double sin2(double x) {
  const double s = std::sin(x);
  return s * s;
}

inline double cos2(Angle a) { return cos2(a.value()); }
inline double sin2(Angle a) { return sin2(a.value()); }

}  // namespace mrfoptics
