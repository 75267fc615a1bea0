/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#include "polarlens/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace polarlens {

namespace {

constexpr double kRowTolerance = 1e-9;

Eigen::MatrixXd to_eigen(const TransitionMatrix& P) {
  const auto size = static_cast<Eigen::Index>(P.n());
  Eigen::MatrixXd m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      m(i, j) = P.p(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return m;
}

void require_stochastic(const TransitionMatrix& P) {
  for (std::size_t i = 0; i < P.n(); ++i) {
    if (P.row_empty(i)) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < P.n(); ++j) sum += P.p(i, j);
    if (std::fabs(sum - 1.0) > kRowTolerance) {
      throw std::invalid_argument("transitions: matrix row " +
                                  std::to_string(i) + " is not stochastic");
    }
  }
}

// |second-largest| eigenvalue by modulus, one unit eigenvalue excluded.
double second_eigenvalue_modulus(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> values(solver.eigenvalues().data(),
                                           solver.eigenvalues().data() +
                                               solver.eigenvalues().size());
  // Drop the eigenvalue closest to 1+0i (stochastic matrices have one).
  auto unit = std::min_element(values.begin(), values.end(),
                               [](const auto& a, const auto& b) {
                                 return std::abs(a - 1.0) < std::abs(b - 1.0);
                               });
  values.erase(unit);
  double second = 0.0;
  for (const auto& v : values) second = std::max(second, std::abs(v));
  return second;
}

double mean_singular_value_of_p_minus_i(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd diff =
      m - Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
  return svd.singularValues().sum() / static_cast<double>(m.rows());
}

}  // namespace

MobilityReport mobility_indices(const TransitionMatrix& P) {
  require_stochastic(P);
  const std::size_t n = P.n();

  MobilityReport r;
  r.has_empty_rows = P.has_empty_rows();
  std::size_t live_rows = 0;
  double diag = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (P.row_empty(i)) continue;
    ++live_rows;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        diag += P.p(i, j);
      } else if (i < j) {
        upper += P.p(i, j);
      } else {
        lower += P.p(i, j);
      }
    }
  }
  if (live_rows == 0) {
    throw std::invalid_argument("transitions: matrix has no populated rows");
  }
  double denom = static_cast<double>(live_rows);
  r.immobility_ratio = diag / denom;
  r.moving_up = upper / denom;
  r.moving_down = lower / denom;

  Eigen::MatrixXd m = to_eigen(P);
  r.m_eigen = (static_cast<double>(n) - m.trace()) / (static_cast<double>(n) - 1.0);
  r.m_second = 1.0 - second_eigenvalue_modulus(m);
  r.m_det = 1.0 - std::fabs(m.determinant());
  r.m_svd = mean_singular_value_of_p_minus_i(m);
  return r;
}

DistanceReport immobility_distances(const TransitionMatrix& P,
                                    const TransitionMatrix& Q) {
  if (P.n() != Q.n() || P.tier() != Q.tier()) {
    throw std::invalid_argument(
        "transitions: distance requires matrices with the same ordering");
  }
  require_stochastic(P);
  require_stochastic(Q);

  DistanceReport r;
  double sq = 0.0;
  const std::size_t n = P.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double diff = P.p(i, j) - Q.p(i, j);
      double order = static_cast<double>(i) - static_cast<double>(j);
      r.l1 += std::fabs(diff);
      sq += diff * diff;
      r.d1 += order * diff;
      double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      r.d3 += order * sign * diff * diff;
    }
  }
  r.l2 = std::sqrt(sq);
  r.d_svd = mean_singular_value_of_p_minus_i(to_eigen(P)) -
            mean_singular_value_of_p_minus_i(to_eigen(Q));
  return r;
}

DistanceReport immobility_distances(const TransitionMatrix& P) {
  return immobility_distances(P, TransitionMatrix::identity(P.tier()));
}

MediatorReport mediator_analysis(const Dataset& ds, const TrailOptions& opts) {
  const StateOrdering high{Tier::High};
  const std::size_t gc = high.index_of(HighLabel::GunControl);
  const std::size_t bf = high.index_of(HighLabel::Balanced);

  MediatorReport r;
  for (const auto& [_, trail] : build_trails(ds, Tier::High, opts)) {
    // Maximal cross-pole segments: a pole entry opens (or re-anchors)
    // a segment toward the other pole; balanced entries in between make
    // the segment mediated.
    std::optional<std::size_t> open_pole;
    bool saw_balanced = false;
    for (std::size_t state : trail) {
      if (state == bf) {
        if (open_pole) saw_balanced = true;
        continue;
      }
      if (!open_pole) {
        open_pole = state;
        saw_balanced = false;
        continue;
      }
      if (state == *open_pole) continue;  // same pole extends the segment
      if (*open_pole == gc) {
        (saw_balanced ? r.indirect_control_to_rights
                      : r.direct_control_to_rights) += 1;
      } else {
        (saw_balanced ? r.indirect_rights_to_control
                      : r.direct_rights_to_control) += 1;
      }
      open_pole = state;  // the closing pole starts the reverse segment
      saw_balanced = false;
    }
  }

  std::uint64_t c2r = r.direct_control_to_rights + r.indirect_control_to_rights;
  std::uint64_t r2c = r.direct_rights_to_control + r.indirect_rights_to_control;
  if (c2r + r2c == 0) {
    throw std::invalid_argument(
        "transitions: no cross-stance segments in any trail");
  }
  if (c2r > 0) {
    r.pct_direct_control_to_rights =
        100.0 * static_cast<double>(r.direct_control_to_rights) /
        static_cast<double>(c2r);
  }
  if (r2c > 0) {
    r.pct_direct_rights_to_control =
        100.0 * static_cast<double>(r.direct_rights_to_control) /
        static_cast<double>(r2c);
  }
  return r;
}

}  // namespace polarlens
