#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wpgeo/kernels.hpp"
#include "wpgeo/wp_kernel.hpp"

namespace wpgeo {

// N-teichon configuration. Positions are stored lifted (real line, radians);
// the kernel evaluations are 2pi-periodic so only differences matter. The
// flow preserves the initial cyclic ordering of q.
struct TeichonState {
  std::vector<double> q;  // lifted positions, strictly increasing with
                          // q.back() - q.front() < 2pi
  std::vector<double> p;  // momentum weights
  double t = 0.0;

  int size() const { return static_cast<int>(q.size()); }
};

// Angular particles advected by the teichon velocity field. theta_ref keeps
// the fixed landmark parameters theta_m the particles were seeded from.
struct LandmarkSet {
  std::vector<double> alpha;      // lifted, strictly increasing cyclically
  std::vector<double> theta_ref;  // same length as alpha

  int size() const { return static_cast<int>(alpha.size()); }
};

// Forward sensitivities with respect to p(0): beta = d alpha/d p0 (M x N),
// piv = d p/d p0, chi = d q/d p0 (both N x N, row-major). At t = 0 this is
// (0, I, 0).
struct VariationState {
  int n_teichons = 0;
  int n_landmarks = 0;
  std::vector<double> beta, piv, chi;

  static VariationState initial(int n_teichons, int n_landmarks);
};

struct Trajectory {
  struct Frame {
    double t = 0.0;
    std::vector<double> q, p, alpha;
    double energy = 0.0;  // p^T G(q) p
  };
  std::vector<Frame> frames;                       // t strictly increasing, 0..1
  std::optional<VariationState> final_variation;   // present when requested
  std::vector<std::pair<double, double>> energy_log;  // (t, E(t)) per frame
  double dt_used = 0.0;  // after any automatic halving
};

struct IntegrateOptions {
  double dt = 1.0 / 200;
  int n_snapshots = 21;  // frames at t = n/20 by default
  bool with_variations = false;
  double energy_drift_tol = 1e-6;     // relative, triggers halving then error
  double residual_drift_tol = 1e-8;   // absolute growth of horizontality
  int max_halvings = 3;
  bool check_crowding = true;
  bool use_serial_kernels = false;    // reference path (tests, benchmarks)
};

// |sum p_j|, |sum p_j cos q_j|, |sum p_j sin q_j| — the three admissibility
// residuals of the horizontal space. Conserved by the flow.
std::array<double, 3> horizontality_residual(std::span<const double> q,
                                             std::span<const double> p);

// Classical fixed-step 4th-order integration of the coupled teichon /
// landmark (/ variational) system from t = 0 to t = 1.
//
// Monitors: energy drift and horizontality drift at snapshot times (both
// retried with halved dt before raising EnergyDrift), teichon/landmark
// ordering after every step (OrderingViolation), and the minimum teichon
// gap against sqrt(eps_mach) (CrowdingDetected).
Trajectory integrate(const TeichonState& s0, const LandmarkSet& l0,
                     const IntegrateOptions& opt = {});

// Right-hand sides as free functions over states (thin wrappers over the
// kernels; the spec-level entry points).
void rhs_teichon(const TeichonState& s, std::span<double> dq, std::span<double> dp);
std::vector<double> rhs_landmarks(const TeichonState& s, const LandmarkSet& l);
void rhs_variations(const TeichonState& s, const LandmarkSet& l,
                    const VariationState& v, VariationState& dv,
                    VariationWorkspace& ws);

// Uniform (theta, t) samples of v(theta, t) = sum_j p_j(t) G(theta - q_j(t))
// for contour plots. Times are taken from the nearest stored frame (exact
// when the requested t grid is a subset of the snapshot times).
struct VelocityGrid {
  std::vector<double> theta;  // theta_res values in [0, 2pi)
  std::vector<double> t;      // t_res values in [0, 1]
  std::vector<double> v;      // row-major, v[it * theta_res + ith]
};
VelocityGrid velocity_grid(const Trajectory& traj, int theta_res, int t_res);

}  // namespace wpgeo
