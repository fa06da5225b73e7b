#pragma once

#include <cmath>
#include <numbers>

namespace wpgeo {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce to the canonical representative in [0, 2pi).
inline double reduce_0_2pi(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod can return two_pi after the correction when x is a tiny negative
  if (r >= two_pi) r = 0.0;
  return r;
}

// Reduce to (-pi, pi]; best conditioning for kernel evaluation near 0.
inline double reduce_pm_pi(double x) {
  double r = std::remainder(x, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r = std::numbers::pi;
  return r;
}

// An angle on S^1. Construction reduces mod 2pi, so two Angles that differ
// by an exact multiple of 2pi compare equal.
class Angle {
 public:
  Angle() : v_(0.0) {}
  explicit Angle(double radians) : v_(reduce_0_2pi(radians)) {}

  double value() const { return v_; }               // in [0, 2pi)
  double signed_value() const { return reduce_pm_pi(v_); }  // in (-pi, pi]

  friend bool operator==(Angle a, Angle b) { return a.v_ == b.v_; }
  friend Angle operator-(Angle a, Angle b) { return Angle(a.v_ - b.v_); }

 private:
  double v_;
};

}  // namespace wpgeo
