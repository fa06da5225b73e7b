// Reference kernels: direct term-by-term transcription of the evolution
// equations, used as the oracle for the OpenMP implementations.

#include "wpgeo/kernels.hpp"
#include "wpgeo/wp_kernel.hpp"

namespace wpgeo::serial {

void teichon_rhs(std::span<const double> q, std::span<const double> p,
                 std::span<double> dq, std::span<double> dp) {
  const int n = static_cast<int>(q.size());
  for (int k = 0; k < n; ++k) {
    double sq = 0.0;
    double sp = 0.0;
    for (int j = 0; j < n; ++j) {
      sq += p[j] * green_raw(q[k] - q[j]);
      sp += p[j] * green_d1_raw(q[k] - q[j]);
    }
    dq[k] = sq;
    dp[k] = -p[k] * sp;
  }
}

void landmark_rhs(std::span<const double> q, std::span<const double> p,
                  std::span<const double> alpha, std::span<double> dalpha) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(alpha.size());
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
                   std::span<double> dpiv, std::span<double> dchi) {
  const size_t nn = static_cast<size_t>(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        acc += piv[k * nn + j] * green_raw(alpha[i] - q[k]) +
               p[k] * green_d1_raw(alpha[i] - q[k]) *
                   (beta[i * nn + j] - chi[k * nn + j]);
      }
      dbeta[i * nn + j] = acc;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s0 = 0.0;
      double s1 = 0.0;
      for (int k = 0; k < n; ++k) {
        s0 += p[k] * green_d1_raw(q[i] - q[k]);
        s1 += piv[k * nn + j] * green_d1_raw(q[i] - q[k]) +
              p[k] * green_d2_raw(q[i] - q[k]) *
                  (chi[i * nn + j] - chi[k * nn + j]);
      }
      dpiv[i * nn + j] = -piv[i * nn + j] * s0 - p[i] * s1;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        acc += piv[k * nn + j] * green_raw(q[i] - q[k]) +
               p[k] * green_d1_raw(q[i] - q[k]) *
                   (chi[i * nn + j] - chi[k * nn + j]);
      }
      dchi[i * nn + j] = acc;
    }
  }
}

void velocity_slice(std::span<const double> q, std::span<const double> p,
                    std::span<const double> theta, std::span<double> v) {
  const int n = static_cast<int>(q.size());
  const int m = static_cast<int>(theta.size());
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += p[j] * green_raw(theta[i] - q[j]);
    v[i] = s;
  }
}

}  // namespace wpgeo::serial
