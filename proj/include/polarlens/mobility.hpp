/* Copyright (c) 2026 polarlens contributors. All rights reserved.
 *
 * This source code is licensed under Apache 2.0 License.
 */

#pragma once

#include <cstdint>
#include <optional>

#include "polarlens/transition_matrix.hpp"

namespace polarlens {

// Mobility view of one transition matrix. immobility_ratio, moving_up
// and moving_down average over the non-empty rows; the eigen-, det- and
// SVD-based indices are 0 for the identity matrix and grow with
// mobility.
struct MobilityReport {
  double immobility_ratio = 0.0;  // IR: mean diagonal mass
  double moving_up = 0.0;         // MU: mean above-diagonal mass
  double moving_down = 0.0;       // MD: mean below-diagonal mass
  double m_eigen = 0.0;           // (n - trace) / (n - 1)
  double m_second = 0.0;          // 1 - |second-largest eigenvalue|
  double m_det = 0.0;             // 1 - |det P|
  double m_svd = 0.0;             // mean singular value of (P - I)
  bool has_empty_rows = false;    // excluded from the IR/MU/MD averages
};

MobilityReport mobility_indices(const TransitionMatrix& P);

// Elementwise and directional distances between P and a reference Q,
// the perfectly immobile identity by default.
struct DistanceReport {
  double l1 = 0.0;     // sum |p_ij - q_ij|
  double l2 = 0.0;     // sqrt(sum (p_ij - q_ij)^2)
  double d_svd = 0.0;  // m_svd(P) - m_svd(Q)
  double d1 = 0.0;     // sum (i - j)(p_ij - q_ij)
  double d3 = 0.0;     // sum (i - j) sign(p_ij - q_ij)(p_ij - q_ij)^2
};

DistanceReport immobility_distances(const TransitionMatrix& P);
DistanceReport immobility_distances(const TransitionMatrix& P,
                                    const TransitionMatrix& Q);

// Direct vs mediated transitions between the two stance poles. A
// segment runs from a control-stance trail entry to the next
// rights-stance entry (or the reverse); it is direct when no
// balanced-stance entry lies strictly between. A direction with no
// segments reports no percentage; no segments at all is an error.
struct MediatorReport {
  std::uint64_t direct_control_to_rights = 0;
  std::uint64_t indirect_control_to_rights = 0;
  std::uint64_t direct_rights_to_control = 0;
  std::uint64_t indirect_rights_to_control = 0;
  std::optional<double> pct_direct_control_to_rights;  // 0..100
  std::optional<double> pct_direct_rights_to_control;
};

MediatorReport mediator_analysis(const Dataset& ds, const TrailOptions& opts = {});

}  // namespace polarlens
