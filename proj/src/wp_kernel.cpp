#include "wpgeo/wp_kernel.hpp"

#include <Eigen/Cholesky>
#include <complex>
#include <limits>

#include "wpgeo/errors.hpp"

namespace wpgeo {

GramMatrix gram_matrix(std::span<const double> q) {
  const int n = static_cast<int>(q.size());
  if (n < 1) throw Error(ErrorKind::InputError, "gram_matrix requires N >= 1");
  GramMatrix G(n, n);
  for (int i = 0; i < n; ++i) {
    G(i, i) = 0.5;
    for (int j = 0; j < i; ++j) {
      double v = green_raw(q[i] - q[j]);
      G(i, j) = v;
      G(j, i) = v;
    }
  }
  return G;
}

double wp_pairing(std::span<const double> p1, std::span<const double> p2,
                  const GramMatrix& G) {
  const int n = static_cast<int>(G.rows());
  if (static_cast<int>(p1.size()) != n || static_cast<int>(p2.size()) != n)
    throw Error(ErrorKind::InputError, "wp_pairing dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += G(i, j) * p2[j];
    acc += p1[i] * row;
  }
  return acc;
}

double wp_norm(std::span<const double> p, const GramMatrix& G) {
  double s = wp_pairing(p, p, G);
  // mildly negative self-pairing is roundoff; beyond that the Gram matrix
  // is numerically invalid (crowding)
  if (s < -1e-12 * static_cast<double>(p.size()))
    throw Error(ErrorKind::SingularGram, "negative WP* self-pairing");
  return std::sqrt(std::max(s, 0.0));
}

GramDiagnostics gram_diagnostics(std::span<const double> q, const GramMatrix& G) {
  GramDiagnostics d;
  const int n = static_cast<int>(q.size());
  d.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      d.min_gap = std::min(d.min_gap, std::fabs(reduce_pm_pi(q[i] - q[j])));
  if (n == 1) d.min_gap = two_pi;

  Eigen::LDLT<GramMatrix> ldlt(G);
  Eigen::VectorXd diag = ldlt.vectorD().cwiseAbs();
  double dmax = diag.maxCoeff();
  double dmin = diag.minCoeff();
  d.cond_estimate = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();
  d.crowded = d.min_gap < std::sqrt(std::numeric_limits<double>::epsilon());
  return d;
}

FourierCheck green_fourier_check(int n_max, int grid_size) {
  if (n_max < 2) throw Error(ErrorKind::InputError, "green_fourier_check: n_max >= 2 required");
  if (grid_size < 4 * n_max)
    throw Error(ErrorKind::InputError, "green_fourier_check: grid_size >= 4*n_max required");

  std::vector<double> samples(grid_size);
  for (int j = 0; j < grid_size; ++j)
    samples[j] = green_raw(two_pi * static_cast<double>(j) / grid_size);

  auto coeff = [&](int n) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < grid_size; ++j) {
      double ph = -n * two_pi * static_cast<double>(j) / grid_size;
      acc += samples[j] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc / static_cast<double>(grid_size);
  };

  FourierCheck out;
  out.g0_mag = std::abs(coeff(0));
  out.g1_mag = std::abs(coeff(1));
  out.residuals.reserve(n_max - 1);
  for (int n = 2; n <= n_max; ++n) {
    double w = static_cast<double>(n) * n * n - n;  // |n^3 - n| for n >= 2
    out.residuals.push_back(std::abs(w * coeff(n) - 1.0));
  }
  return out;
}

}  // namespace wpgeo
