#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wpgeo {

// Scratch buffers for the variational right-hand side so repeated calls do
// not allocate. Matrices are row-major flat arrays.
struct VariationWorkspace {
  std::vector<double> g, g1, g2;    // N x N tables of G, G', G''
  std::vector<double> ga, ga1;      // M x N tables of G, G' at (alpha_m - q_k)
  std::vector<double> xp;           // N x N, row k = p_k * chi_k
  std::vector<double> c1, r, ca;    // row sums
  void resize(int n_teichons, int n_landmarks);
};

// Production kernels: OpenMP-parallel over output rows. Every output element
// is a fixed-order serial reduction owned by one thread, so results are
// bitwise reproducible for any thread count.
namespace kernels {

// dq_k = sum_j p_j G(q_k - q_j),  dp_k = -p_k sum_j p_j G'(q_k - q_j)
void teichon_rhs(std::span<const double> q, std::span<const double> p,
                 std::span<double> dq, std::span<double> dp);

// dalpha_m = sum_n p_n G(alpha_m - q_n)
void landmark_rhs(std::span<const double> q, std::span<const double> p,
                  std::span<const double> alpha, std::span<double> dalpha);

// Linearized flow (forward sensitivities w.r.t. p(0)):
//   dbeta_m = sum_k [ pi_k G(a_m - q_k) + p_k G'(a_m - q_k) (beta_m - chi_k) ]
//   dpi_n   = -pi_n sum_k p_k G'(q_n - q_k)
//             - p_n sum_k [ pi_k G'(q_n - q_k) + p_k G''(q_n - q_k) (chi_n - chi_k) ]
//   dchi_n  = sum_k [ pi_k G(q_n - q_k) + p_k G'(q_n - q_k) (chi_n - chi_k) ]
// with G''(0) = 0. beta is M x N; pi, chi are N x N; all row-major.
void variation_rhs(int n_teichons, int n_landmarks, std::span<const double> q,
                   std::span<const double> p, std::span<const double> alpha,
                   std::span<const double> beta, std::span<const double> piv,
                   std::span<const double> chi, std::span<double> dbeta,
                   std::span<double> dpiv, std::span<double> dchi,
                   VariationWorkspace& ws);

// v(theta_i, t_j) = sum_k p_k(t_j) G(theta_i - q_k(t_j)) for one time slice.
void velocity_slice(std::span<const double> q, std::span<const double> p,
                    std::span<const double> theta, std::span<double> v);

}  // namespace kernels

// Reference implementations: naive textbook loops transcribing the equations
// term by term. Kept serial and unclever on purpose; tests check the
// production kernels against these.
namespace serial {

void teichon_rhs(std::span<const double> q, std::span<const double> p,
                 std::span<double> dq, std::span<double> dp);

void landmark_rhs(std::span<const double> q, std::span<const double> p,
                  std::span<const double> alpha, std::span<double> dalpha);

void variation_rhs(int n_teichons, int n_landmarks, std::span<const double> q,
                   std::span<const double> p, std::span<const double> alpha,
                   std::span<const double> beta, std::span<const double> piv,
                   std::span<const double> chi, std::span<double> dbeta,
                   std::span<double> dpiv, std::span<double> dchi);

void velocity_slice(std::span<const double> q, std::span<const double> p,
                    std::span<const double> theta, std::span<double> v);

}  // namespace serial

}  // namespace wpgeo
