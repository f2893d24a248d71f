#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hcp {

enum class Topology { torus, half_line, window };

/// A locally finite point configuration with every gap at least d_min.
///
/// torus: points in [0, circumference), gaps wrap.
/// half_line: points on [0, inf); the final stored point truncates an infinite
///   configuration, so `frontier` marks how many leading points are unaffected
///   by the missing right tail.  Readers must ignore indices >= frontier.
/// window: a stationary snapshot on [window_lo, window_hi]; observation only,
///   the epoch engine does not evolve it (both edges are truncation artifacts).
struct Configuration {
  Topology topology = Topology::torus;
  double circumference = 0.0;             // torus
  double window_lo = 0.0, window_hi = 0.0;  // window
  std::vector<double> points;             // strictly increasing
  std::optional<std::size_t> frontier;    // half_line only

  std::size_t trusted_points() const {
    return frontier ? std::min(*frontier, points.size()) : points.size();
  }

  /// Smallest gap (including the wrap gap on a torus); +inf when fewer than
  /// two gaps exist.
  double min_gap() const;

  /// Throws unless points are strictly increasing, inside the stated support,
  /// and all gaps are >= d_min - slack.
  void check(double d_min, double slack = 1e-9) const;
};

}  // namespace hcp
