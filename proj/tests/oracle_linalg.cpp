/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "oracle_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polarlens::testing {

std::array<std::complex<double>, 3> cubic_eigenvalues(
    const std::array<double, 9>& m) {
  // Characteristic polynomial: lambda^3 - tr*lambda^2 + s2*lambda - det,
  // with s2 the sum of principal 2x2 minors.
  double tr = m[0] + m[4] + m[8];
  double s2 = (m[0] * m[4] - m[1] * m[3]) + (m[0] * m[8] - m[2] * m[6]) +
              (m[4] * m[8] - m[5] * m[7]);
  double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);

  // lambda = t + tr/3 reduces to t^3 + p*t + q = 0.
  double a = -tr, b = s2, c = -det;
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

  std::array<std::complex<double>, 3> roots;
  const std::complex<double> shift(-a / 3.0, 0.0);
  if (std::abs(p) < 1e-300 && std::abs(q) < 1e-300) {
    roots.fill(shift);
    return roots;
  }
  std::complex<double> disc =
      std::sqrt(std::complex<double>(q * q / 4.0 + p * p * p / 27.0, 0.0));
  std::complex<double> u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
  const std::complex<double> omega(-0.5, std::sqrt(3.0) / 2.0);
  std::complex<double> w = u;
  for (int k = 0; k < 3; ++k) {
    roots[k] = w - p / (3.0 * w) + shift;
    w *= omega;
  }
  return roots;
}

double second_eigen_modulus(const std::array<double, 9>& m) {
  auto ev = cubic_eigenvalues(m);
  std::size_t drop = 0;
  double best = std::abs(ev[0] - std::complex<double>(1.0, 0.0));
  for (std::size_t i = 1; i < 3; ++i) {
    double d = std::abs(ev[i] - std::complex<double>(1.0, 0.0));
    if (d < best) {
      best = d;
      drop = i;
    }
  }
  double second = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != drop) second = std::max(second, std::abs(ev[i]));
  }
  return second;
}

double determinant(const std::vector<double>& m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("determinant: bad size");
  std::vector<double> a = m;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    }
    if (std::fabs(a[pivot * n + col]) < 1e-300) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[pivot * n + j], a[col * n + j]);
      }
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

std::vector<double> singular_values(const std::vector<double>& m,
                                    std::size_t n) {
  if (m.size() != n * n) {
    throw std::invalid_argument("singular_values: bad size");
  }
  // One-sided Jacobi: rotate column pairs of A until mutually orthogonal,
  // then the singular values are the column norms. Forming A^T A instead
  // would square the conditioning and bury a vanishing singular value at
  // sqrt(machine epsilon), far above what callers assert.
  std::vector<double> a = m;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          alpha += akp * akp;
          beta += akq * akq;
          gamma += akp * akq;
        }
        double denom = std::sqrt(alpha) * std::sqrt(beta);
        if (denom < 1e-300 || std::fabs(gamma) <= 1e-15 * denom) continue;
        double theta = 0.5 * std::atan2(2.0 * gamma, beta - alpha);
        double c = std::cos(theta), t = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - t * akq;
          a[k * n + q] = t * akp + c * akq;
        }
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k * n + i] * a[k * n + i];
    out[i] = std::sqrt(acc);
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace polarlens::testing
