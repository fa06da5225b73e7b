#pragma once

#include <Eigen/Core>
#include <cmath>
#include <span>
#include <vector>

#include "wpgeo/angle.hpp"

namespace wpgeo {

// Weil-Petersson Green's function on S^1,
//
//   G(t) = (1 - cos t) log[2(1 - cos t)] + (3/2) cos t - 1,
//
// the kernel inverting L = -H(d^3 + d) on the horizontal space (vanishing
// 0, +-1 Fourier modes). Even, 2pi-periodic, G(0) = 1/2. Below the
// `small_angle_cutoff` the closed form loses digits to 0*log(0)
// cancellation; we switch to the series G = 1/2 + t^2 (log|t| - 3/4).
inline constexpr double small_angle_cutoff = 1e-6;

inline double green_raw(double theta) {
  double t = reduce_pm_pi(theta);
  double at = std::fabs(t);
  if (at < small_angle_cutoff) {
    if (t == 0.0) return 0.5;
    return 0.5 + t * t * (std::log(at) - 0.75);
  }
  double c = std::cos(t);
  double u = 1.0 - c;
  return u * std::log(2.0 * u) + 1.5 * c - 1.0;
}

// G'(t) = sin t (log[2(1 - cos t)] - 1/2), odd, G'(0) = 0.
inline double green_d1_raw(double theta) {
  double t = reduce_pm_pi(theta);
  double at = std::fabs(t);
  if (at < small_angle_cutoff) {
    if (t == 0.0) return 0.0;
    return t * (2.0 * std::log(at) - 0.5);
  }
  return std::sin(t) * (std::log(2.0 * (1.0 - std::cos(t))) - 0.5);
}

// G''(t) = cos t (log[2(1 - cos t)] - 1/2) + 1 + cos t for t != 0.
// G'' has a log singularity at 0; by convention G''(0) = 0 (the
// self-interaction terms it would multiply carry a factor that vanishes).
inline double green_d2_raw(double theta) {
  double t = reduce_pm_pi(theta);
  double at = std::fabs(t);
  if (at < small_angle_cutoff) {
    if (t == 0.0) return 0.0;
    return 2.0 * std::log(at) + 1.5;
  }
  double c = std::cos(t);
  return c * (std::log(2.0 * (1.0 - c)) - 0.5) + 1.0 + c;
}

// Fused evaluation of G, G', G'' sharing one cos/sin/log. Hot path of the
// ODE kernels.
inline void green_all_raw(double theta, double& g, double& g1, double& g2) {
  double t = reduce_pm_pi(theta);
  double at = std::fabs(t);
  if (at < small_angle_cutoff) {
    if (t == 0.0) {
      g = 0.5;
      g1 = 0.0;
      g2 = 0.0;
      return;
    }
    double lt = std::log(at);
    g = 0.5 + t * t * (lt - 0.75);
    g1 = t * (2.0 * lt - 0.5);
    g2 = 2.0 * lt + 1.5;
    return;
  }
  double c = std::cos(t);
  double s = std::sin(t);
  double l = std::log(2.0 * (1.0 - c));
  g = (1.0 - c) * l + 1.5 * c - 1.0;
  g1 = s * (l - 0.5);
  g2 = c * (l - 0.5) + 1.0 + c;
}

inline double green(Angle theta) { return green_raw(theta.value()); }
inline double green_d1(Angle theta) { return green_d1_raw(theta.value()); }
inline double green_d2(Angle theta) { return green_d2_raw(theta.value()); }

// Gram matrix of a teichon configuration: entry (i,j) = G(q_i - q_j).
// Symmetric, diagonal = G(0) = 1/2; represents the WP* inner product on
// momentum coefficients.
using GramMatrix = Eigen::MatrixXd;

GramMatrix gram_matrix(std::span<const double> q);

// p1^T G p2; with p1 == p2 this is the flow energy E = <m, v>.
double wp_pairing(std::span<const double> p1, std::span<const double> p2,
                  const GramMatrix& G);
double wp_norm(std::span<const double> p, const GramMatrix& G);

// Conditioning report for a teichon configuration, per the crowding
// analysis: positions closer than sqrt(eps_mach) make the Gram matrix
// singular to numerical precision.
struct GramDiagnostics {
  double min_gap = 0.0;        // min_{i != j} circular distance |q_i - q_j|
  double cond_estimate = 0.0;  // max|d|/min|d| of the LDL^T diagonal
  bool crowded = false;        // min_gap < sqrt(eps_mach)
};
GramDiagnostics gram_diagnostics(std::span<const double> q, const GramMatrix& G);

// Spectral verification that L G = Proj(delta): samples G on a uniform
// grid, takes discrete Fourier coefficients g_n = (1/L) sum G(theta_j)
// e^{-i n theta_j}, and reports |n^3 - n| g_n - 1 for 2 <= n <= n_max
// together with the horizontality residuals |g_0|, |g_1|.
struct FourierCheck {
  std::vector<double> residuals;  // index 0 corresponds to n = 2
  double g0_mag = 0.0;
  double g1_mag = 0.0;
};
FourierCheck green_fourier_check(int n_max, int grid_size);

}  // namespace wpgeo
