#pragma once

#include <cstdint>
#include <vector>

namespace hcp {

/// Nonnegative measure on a regular lattice.
///
/// Site j carries mass[j] at coordinate (first + j) * step.  tail_mass records
/// mass known to lie beyond the last stored site (truncation of an infinite
/// law); it is carried through convolutions and bounds Laplace-transform
/// truncation error but is never redistributed.
struct GridMeasure {
  double step = 1.0;
  std::int64_t first = 1;
  std::vector<double> mass;
  double tail_mass = 0.0;

  std::size_t size() const { return mass.size(); }
  double site(std::size_t j) const {
    return static_cast<double>(first + static_cast<std::int64_t>(j)) * step;
  }
  /// Smallest coordinate any tail mass can occupy.
  double tail_floor() const {
    return static_cast<double>(first + static_cast<std::int64_t>(mass.size())) * step;
  }

  double total() const;
  double mean() const;
  double second_moment() const;

  /// sum_j mass[j] * exp(-s * site(j)).  Excludes the tail; see laplace_tail_bound.
  double laplace(double s) const;
  /// Upper bound on the contribution of the truncated tail at transform argument s.
  double laplace_tail_bound(double s) const;
  /// Derivative of the transform: -sum_j site(j) * mass[j] * exp(-s * site(j)).
  double laplace_derivative(double s) const;

  /// Mass at coordinates < z (lattice-exact half-open prefix).
  double mass_below(double z) const;

  /// Rescale total mass (plus tail) to one; rejects a nonpositive total.
  GridMeasure renormalized() const;

  /// True when every site coordinate is an integer (unit step, integer first).
  bool integer_lattice() const { return step == 1.0; }
};

/// Direct convolution, truncated so that no site index (coordinate / step)
/// exceeds max_site_units.  Mass pushed past the cut, and all cross terms with
/// either tail, accumulate into the result's tail_mass.  Steps must match.
GridMeasure convolve(const GridMeasure& a, const GridMeasure& b,
                     std::int64_t max_site_units);

/// Half total-variation distance between two lattice measures on the union of
/// their supports, plus the difference of their truncation deficits relative
/// to the given common total (1 for probability laws).
double tv_distance(const GridMeasure& a, const GridMeasure& b);

}  // namespace hcp
