#include "wpgeo/kernels.hpp"

#include <cassert>

#include "wpgeo/wp_kernel.hpp"

namespace wpgeo {

void VariationWorkspace::resize(int n, int m) {
  g.resize(static_cast<size_t>(n) * n);
  g1.resize(static_cast<size_t>(n) * n);
  g2.resize(static_cast<size_t>(n) * n);
  ga.resize(static_cast<size_t>(m) * n);
  ga1.resize(static_cast<size_t>(m) * n);
  xp.resize(static_cast<size_t>(n) * n);
  c1.resize(n);
  r.resize(n);
  ca.resize(m);
}

namespace kernels {

void teichon_rhs(std::span<const double> q, std::span<const double> p,
                 std::span<double> dq, std::span<double> dp) {
  const int n = static_cast<int>(q.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    double sq = 0.0, sp = 0.0;
    for (int j = 0; j < n; ++j) {
      double g, g1, g2;
      green_all_raw(q[k] - q[j], g, g1, g2);
      sq += p[j] * g;
      sp += p[j] * g1;
    }
    dq[k] = sq;
    dp[k] = -p[k] * sp;
  }
}

void landmark_rhs(std::span<const double> q, std::span<const double> p,
                  std::span<const double> alpha, std::span<double> dalpha) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(alpha.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += p[j] * green_raw(alpha[i] - q[j]);
    dalpha[i] = s;
  }
}

void variation_rhs(int n, int m, std::span<const double> q,
                   std::span<const double> p, std::span<const double> alpha,
                   std::span<const double> beta, std::span<const double> piv,
                   std::span<const double> chi, std::span<double> dbeta,
                   std::span<double> dpiv, std::span<double> dchi,
                   VariationWorkspace& ws) {
  ws.resize(n, m);
  const size_t nn = static_cast<size_t>(n);

  // Kernel tables. G is even and G' odd in the argument, so fill the upper
  // triangle and mirror.
#pragma omp parallel for schedule(static, 4)
  for (int i = 0; i < n; ++i) {
    ws.g[i * nn + i] = 0.5;
    ws.g1[i * nn + i] = 0.0;
    ws.g2[i * nn + i] = 0.0;  // G''(0) convention
    for (int j = i + 1; j < n; ++j) {
      double g, g1, g2;
      green_all_raw(q[i] - q[j], g, g1, g2);
      ws.g[i * nn + j] = g;
      ws.g1[i * nn + j] = g1;
      ws.g2[i * nn + j] = g2;
      ws.g[j * nn + i] = g;
      ws.g1[j * nn + i] = -g1;
      ws.g2[j * nn + i] = g2;
    }
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double g, g1, g2;
      green_all_raw(alpha[i] - q[j], g, g1, g2);
      ws.ga[i * nn + j] = g;
      ws.ga1[i * nn + j] = g1;
    }
  }

#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) ws.xp[k * nn + j] = p[k] * chi[k * nn + j];
    double s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < n; ++j) {
      s1 += p[j] * ws.g1[k * nn + j];
      s2 += p[j] * ws.g2[k * nn + j];
    }
    ws.c1[k] = s1;
    ws.r[k] = s2;
  }

  // dpi_n = -c1[n] pi_n - p_n [ (G1 pi)_n + r[n] chi_n - (G2 Xp)_n ]
  // dchi_n = (G pi)_n + c1[n] chi_n - (G1 Xp)_n
#pragma omp parallel
  {
    std::vector<double> a1(nn), a2(nn), a3(nn), a4(nn);
#pragma omp for schedule(static)
    for (int row = 0; row < n; ++row) {
      std::fill(a1.begin(), a1.end(), 0.0);
      std::fill(a2.begin(), a2.end(), 0.0);
      std::fill(a3.begin(), a3.end(), 0.0);
      std::fill(a4.begin(), a4.end(), 0.0);
      for (int k = 0; k < n; ++k) {
        const double cg1 = ws.g1[row * nn + k];
        const double cg2 = ws.g2[row * nn + k];
        const double cg = ws.g[row * nn + k];
        const double* pk = &piv[k * nn];
        const double* xk = &ws.xp[k * nn];
        for (int j = 0; j < n; ++j) {
          a1[j] += cg1 * pk[j];  // (G1 pi)_row
          a2[j] += cg2 * xk[j];  // (G2 Xp)_row
          a3[j] += cg * pk[j];   // (G pi)_row
          a4[j] += cg1 * xk[j];  // (G1 Xp)_row
        }
      }
      const double c1r = ws.c1[row], rr = ws.r[row], pr = p[row];
      for (int j = 0; j < n; ++j) {
        dpiv[row * nn + j] =
            -c1r * piv[row * nn + j] -
            pr * (a1[j] + rr * chi[row * nn + j] - a2[j]);
        dchi[row * nn + j] = a3[j] + c1r * chi[row * nn + j] - a4[j];
      }
    }
  }

  // dbeta_m = (Ga pi)_m + ca[m] beta_m - (Ga1 Xp)_m
#pragma omp parallel
  {
    std::vector<double> b1(nn), b2(nn);
#pragma omp for schedule(static)
    for (int row = 0; row < m; ++row) {
      std::fill(b1.begin(), b1.end(), 0.0);
      std::fill(b2.begin(), b2.end(), 0.0);
      double cam = 0.0;
      for (int k = 0; k < n; ++k) {
        const double cg = ws.ga[row * nn + k];
        const double cg1 = ws.ga1[row * nn + k];
        cam += p[k] * cg1;
        const double* pk = &piv[k * nn];
        const double* xk = &ws.xp[k * nn];
        for (int j = 0; j < n; ++j) {
          b1[j] += cg * pk[j];
          b2[j] += cg1 * xk[j];
        }
      }
      ws.ca[row] = cam;
      for (int j = 0; j < n; ++j)
        dbeta[row * nn + j] = b1[j] + cam * beta[row * nn + j] - b2[j];
    }
  }
}

void velocity_slice(std::span<const double> q, std::span<const double> p,
                    std::span<const double> theta, std::span<double> v) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(theta.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += p[j] * green_raw(theta[i] - q[j]);
    v[i] = s;
  }
}

}  // namespace kernels
}  // namespace wpgeo
