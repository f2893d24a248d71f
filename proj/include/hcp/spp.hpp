#pragma once

#include <cstdint>
#include <string>

#include "hcp/configuration.hpp"
#include "hcp/grid_measure.hpp"
#include "hcp/rng.hpp"

namespace hcp {

/// An interval (gap) law together with the facts samplers need that the
/// truncated grid cannot express: whether the untruncated law has finite
/// mean, and that mean when finite.
struct IntervalLaw {
  GridMeasure grid;
  bool finite_mean = true;
  double mean = 0.0;  // of the ideal law when finite, else unused
  std::string name;
};

/// Presets.  delta: unit mass at k*h.  geometric: P(X = k h) = p(1-p)^(k-1),
/// truncated at x_max with the remainder in tail_mass.  zeta_tail: integer law
/// with P(X > x) = x^(-alpha) for x >= 1 (support starts at 2), truncated at
/// x_max; infinite mean for alpha <= 1.
IntervalLaw interval_law_delta(std::int64_t k, double h = 1.0);
IntervalLaw interval_law_geometric(double p, std::int64_t x_max, double h = 1.0);
IntervalLaw interval_law_zeta_tail(double alpha, std::int64_t x_max);
IntervalLaw interval_law_custom(GridMeasure grid, bool finite_mean,
                                std::string name = "custom");

/// Walker/Vose alias sampler over a grid probability law (total within 1e-9
/// of one after folding tail_mass into the last site).  Two uniforms per
/// draw; table construction is deterministic.
class AliasTable {
 public:
  explicit AliasTable(const GridMeasure& law);
  /// Index into the law's mass array.
  std::size_t draw_index(CounterRng& rng) const;
  double draw_site(CounterRng& rng) const {
    return static_cast<double>(first_ + static_cast<std::int64_t>(draw_index(rng))) * step_;
  }
  std::int64_t draw_site_units(CounterRng& rng) const {
    return first_ + static_cast<std::int64_t>(draw_index(rng));
  }

 private:
  double step_;
  std::int64_t first_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Renewal process pinned at the origin: x0 = 0 and i.i.d. gaps, n_intervals
/// of them.  Half-line topology, frontier set to the last index (the final
/// point already depends on the missing right tail).
Configuration sample_ren_pinned(const IntervalLaw& law, std::size_t n_intervals,
                                CounterRng& rng);

/// n_intervals i.i.d. gaps arranged in a cycle: a torus of circumference
/// equal to their sum.  Gap-stationary by exchangeability.
Configuration sample_ren_cycle(const IntervalLaw& law, std::size_t n_intervals,
                               CounterRng& rng);

/// Stationary renewal restricted to a window containing the origin, built
/// from the size-biased straddling interval with a uniform origin offset.
/// Rejects laws without finite mean.
Configuration sample_ren_stationary(const IntervalLaw& law, double window_lo,
                                    double window_hi, CounterRng& rng);

/// Stationary renewal on a torus of the given circumference: sequential fill,
/// re-drawing the final gap until the wrap gap is >= d_min.  Bias O(1/n).
Configuration sample_ren_stationary_torus(const IntervalLaw& law, double circumference,
                                          double d_min, CounterRng& rng);

/// Integer-lattice stationary renewal on a window: size-biased straddle with
/// uniform integer offset.  Requires unit step, integer support, finite mean.
Configuration sample_ren_z(const IntervalLaw& law, double window_lo,
                           double window_hi, CounterRng& rng);

}  // namespace hcp
