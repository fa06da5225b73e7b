#include "wpgeo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpgeo/errors.hpp"

namespace wpgeo {

VariationState VariationState::initial(int n, int m) {
  VariationState v;
  v.n_teichons = n;
  v.n_landmarks = m;
  v.beta.assign(static_cast<size_t>(m) * n, 0.0);
  v.piv.assign(static_cast<size_t>(n) * n, 0.0);
  v.chi.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v.piv[static_cast<size_t>(i) * n + i] = 1.0;
  return v;
}

std::array<double, 3> horizontality_residual(std::span<const double> q,
                                             std::span<const double> p) {
  double s0 = 0.0, sc = 0.0, ss = 0.0;
  for (size_t j = 0; j < q.size(); ++j) {
    s0 += p[j];
    sc += p[j] * std::cos(q[j]);
    ss += p[j] * std::sin(q[j]);
  }
  return {std::fabs(s0), std::fabs(sc), std::fabs(ss)};
}

void rhs_teichon(const TeichonState& s, std::span<double> dq, std::span<double> dp) {
  kernels::teichon_rhs(s.q, s.p, dq, dp);
}

std::vector<double> rhs_landmarks(const TeichonState& s, const LandmarkSet& l) {
  std::vector<double> dalpha(l.alpha.size());
  kernels::landmark_rhs(s.q, s.p, l.alpha, dalpha);
  return dalpha;
}

void rhs_variations(const TeichonState& s, const LandmarkSet& l,
                    const VariationState& v, VariationState& dv,
                    VariationWorkspace& ws) {
  const int n = s.size(), m = l.size();
  dv = VariationState{};
  dv.n_teichons = n;
  dv.n_landmarks = m;
  dv.beta.resize(static_cast<size_t>(m) * n);
  dv.piv.resize(static_cast<size_t>(n) * n);
  dv.chi.resize(static_cast<size_t>(n) * n);
  kernels::variation_rhs(n, m, s.q, s.p, l.alpha, v.beta, v.piv, v.chi,
                         dv.beta, dv.piv, dv.chi, ws);
}

namespace {

// Flat layout: [q | p | alpha | beta | piv | chi], matrices row-major.
struct Layout {
  int n = 0, m = 0;
  bool var = false;
  size_t q0 = 0, p0 = 0, a0 = 0, b0 = 0, pi0 = 0, x0 = 0, total = 0;
  Layout(int n_, int m_, bool var_) : n(n_), m(m_), var(var_) {
    q0 = 0;
    p0 = q0 + n;
    a0 = p0 + n;
    b0 = a0 + m;
    pi0 = b0 + (var ? static_cast<size_t>(m) * n : 0);
    x0 = pi0 + (var ? static_cast<size_t>(n) * n : 0);
    total = x0 + (var ? static_cast<size_t>(n) * n : 0);
  }
};

void eval_rhs(const Layout& lo, const std::vector<double>& y,
              std::vector<double>& dy, VariationWorkspace& ws,
              bool use_serial) {
  const int n = lo.n, m = lo.m;
  std::span<const double> q(&y[lo.q0], n), p(&y[lo.p0], n), a(&y[lo.a0], m);
  std::span<double> dq(&dy[lo.q0], n), dp(&dy[lo.p0], n), da(&dy[lo.a0], m);
  if (use_serial) {
    serial::teichon_rhs(q, p, dq, dp);
    serial::landmark_rhs(q, p, a, da);
  } else {
    kernels::teichon_rhs(q, p, dq, dp);
    kernels::landmark_rhs(q, p, a, da);
  }
  if (lo.var) {
    const size_t bn = static_cast<size_t>(m) * n, nn = static_cast<size_t>(n) * n;
    std::span<const double> B(&y[lo.b0], bn), P(&y[lo.pi0], nn), X(&y[lo.x0], nn);
    std::span<double> dB(&dy[lo.b0], bn), dP(&dy[lo.pi0], nn), dX(&dy[lo.x0], nn);
    if (use_serial)
      serial::variation_rhs(n, m, q, p, a, B, P, X, dB, dP, dX);
    else
      kernels::variation_rhs(n, m, q, p, a, B, P, X, dB, dP, dX, ws);
  }
}

bool order_ok(const double* v, int n) {
  if (n < 2) return true;
  for (int i = 0; i + 1 < n; ++i)
    if (!(v[i + 1] > v[i])) return false;
  return v[n - 1] - v[0] < two_pi;
}

double min_gap(const double* q, int n) {
  if (n < 2) return two_pi;
  double g = two_pi - (q[n - 1] - q[0]);
  for (int i = 0; i + 1 < n; ++i) g = std::min(g, q[i + 1] - q[i]);
  return g;
}

struct Monitors {
  double e0 = 0.0;
  std::array<double, 3> res0{};
  double p_scale = 0.0;  // roundoff floor for the energy comparison
};

// One full integration attempt at a fixed dt. Throws on monitor violations;
// the caller decides whether to retry with a smaller step.
Trajectory attempt(const TeichonState& s0, const LandmarkSet& l0,
                   const IntegrateOptions& opt, double dt) {
  const int n = s0.size(), m = l0.size();
  const Layout lo(n, m, opt.with_variations);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  std::vector<double> y(lo.total, 0.0);
  std::copy(s0.q.begin(), s0.q.end(), y.begin() + lo.q0);
  std::copy(s0.p.begin(), s0.p.end(), y.begin() + lo.p0);
  std::copy(l0.alpha.begin(), l0.alpha.end(), y.begin() + lo.a0);
  if (opt.with_variations) {
    VariationState v0 = VariationState::initial(n, m);
    std::copy(v0.beta.begin(), v0.beta.end(), y.begin() + lo.b0);
    std::copy(v0.piv.begin(), v0.piv.end(), y.begin() + lo.pi0);
    std::copy(v0.chi.begin(), v0.chi.end(), y.begin() + lo.x0);
  }

  std::vector<double> k1(lo.total), k2(lo.total), k3(lo.total), k4(lo.total),
      yt(lo.total);
  VariationWorkspace ws;

  Monitors mon;
  {
    GramMatrix G0 = gram_matrix(s0.q);
    mon.e0 = wp_pairing(s0.p, s0.p, G0);
    mon.res0 = horizontality_residual(s0.q, s0.p);
    double ap = 0.0;
    for (double v : s0.p) ap += std::fabs(v);
    mon.p_scale = 0.5 * ap * ap;
  }

  Trajectory traj;
  traj.dt_used = dt;
  const int ns = std::max(opt.n_snapshots, 2);

  auto record = [&](double t) {
    Trajectory::Frame f;
    f.t = t;
    f.q.assign(y.begin() + lo.q0, y.begin() + lo.q0 + n);
    f.p.assign(y.begin() + lo.p0, y.begin() + lo.p0 + n);
    f.alpha.assign(y.begin() + lo.a0, y.begin() + lo.a0 + m);
    GramMatrix G = gram_matrix(f.q);
    f.energy = wp_pairing(f.p, f.p, G);
    traj.energy_log.emplace_back(t, f.energy);

    double drift = std::fabs(f.energy - mon.e0);
    if (drift > opt.energy_drift_tol * std::fabs(mon.e0) +
                    64.0 * std::numeric_limits<double>::epsilon() * mon.p_scale)
      throw Error(ErrorKind::EnergyDrift, "relative energy drift at t=" + std::to_string(t));
    auto res = horizontality_residual(f.q, f.p);
    for (int i = 0; i < 3; ++i)
      if (res[i] - mon.res0[i] > opt.residual_drift_tol)
        throw Error(ErrorKind::EnergyDrift,
                    "horizontality residual drift at t=" + std::to_string(t));
    traj.frames.push_back(std::move(f));
  };

  record(0.0);
  for (int i = 0; i + 1 < ns; ++i) {
    const double t_from = static_cast<double>(i) / (ns - 1);
    const double t_to = static_cast<double>(i + 1) / (ns - 1);
    const int nsub = std::max(1, static_cast<int>(std::ceil((t_to - t_from) / dt - 1e-12)));
    const double h = (t_to - t_from) / nsub;
    for (int s = 0; s < nsub; ++s) {
      eval_rhs(lo, y, k1, ws, opt.use_serial_kernels);
      for (size_t j = 0; j < lo.total; ++j) yt[j] = y[j] + 0.5 * h * k1[j];
      eval_rhs(lo, yt, k2, ws, opt.use_serial_kernels);
      for (size_t j = 0; j < lo.total; ++j) yt[j] = y[j] + 0.5 * h * k2[j];
      eval_rhs(lo, yt, k3, ws, opt.use_serial_kernels);
      for (size_t j = 0; j < lo.total; ++j) yt[j] = y[j] + h * k3[j];
      eval_rhs(lo, yt, k4, ws, opt.use_serial_kernels);
      for (size_t j = 0; j < lo.total; ++j)
        y[j] += h / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);

      if (!order_ok(&y[lo.q0], n))
        throw Error(ErrorKind::OrderingViolation, "teichon positions crossed");
      if (!order_ok(&y[lo.a0], m))
        throw Error(ErrorKind::OrderingViolation, "landmarks crossed");
      if (opt.check_crowding && min_gap(&y[lo.q0], n) < sqrt_eps)
        throw Error(ErrorKind::CrowdingDetected,
                    "teichon gap below sqrt(eps_mach)");
    }
    record(t_to);
  }

  if (opt.with_variations) {
    VariationState v;
    v.n_teichons = n;
    v.n_landmarks = m;
    v.beta.assign(y.begin() + lo.b0, y.begin() + lo.b0 + static_cast<size_t>(m) * n);
    v.piv.assign(y.begin() + lo.pi0, y.begin() + lo.pi0 + static_cast<size_t>(n) * n);
    v.chi.assign(y.begin() + lo.x0, y.begin() + lo.x0 + static_cast<size_t>(n) * n);
    traj.final_variation = std::move(v);
  }
  return traj;
}

}  // namespace

Trajectory integrate(const TeichonState& s0, const LandmarkSet& l0,
                     const IntegrateOptions& opt) {
  if (!(opt.dt > 0.0)) throw Error(ErrorKind::InputError, "integrate: dt must be positive");
  if (!order_ok(s0.q.data(), s0.size()))
    throw Error(ErrorKind::InputError, "integrate: q(0) not cyclically ordered");

  double dt = opt.dt;
  for (int attempt_idx = 0;; ++attempt_idx) {
    try {
      return attempt(s0, l0, opt, dt);
    } catch (const Error& e) {
      // Drift and crossings usually respond to a smaller step; crowding is
      // geometric and does not.
      bool retryable = e.kind() == ErrorKind::EnergyDrift ||
                       e.kind() == ErrorKind::OrderingViolation;
      if (!retryable || attempt_idx >= opt.max_halvings) throw;
      dt *= 0.5;
    }
  }
}

VelocityGrid velocity_grid(const Trajectory& traj, int theta_res, int t_res) {
  if (theta_res < 1 || t_res < 1)
    throw Error(ErrorKind::InputError, "velocity_grid: resolutions must be >= 1");
  if (traj.frames.empty())
    throw Error(ErrorKind::InputError, "velocity_grid: empty trajectory");

  VelocityGrid g;
  g.theta.resize(theta_res);
  for (int i = 0; i < theta_res; ++i) g.theta[i] = two_pi * i / theta_res;
  g.t.resize(t_res);
  g.v.resize(static_cast<size_t>(t_res) * theta_res);

  for (int j = 0; j < t_res; ++j) {
    double tq = (t_res == 1) ? 0.0 : static_cast<double>(j) / (t_res - 1);
    // nearest stored frame
    size_t best = 0;
    for (size_t f = 1; f < traj.frames.size(); ++f)
      if (std::fabs(traj.frames[f].t - tq) < std::fabs(traj.frames[best].t - tq))
        best = f;
    const auto& fr = traj.frames[best];
    g.t[j] = fr.t;
    kernels::velocity_slice(fr.q, fr.p, g.theta,
                            std::span<double>(&g.v[static_cast<size_t>(j) * theta_res], theta_res));
  }
  return g;
}

}  // namespace wpgeo
