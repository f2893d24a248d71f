#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace hcp {

/// Transform-argument grid shared by empirical and analytic evaluations.
struct SGrid {
  std::vector<double> s;
  static SGrid log_spaced(double lo = 0.05, double hi = 10.0, std::size_t n = 64);
  bool operator==(const SGrid&) const = default;
};

/// Streaming summary of rescaled observations (gaps/d(n) or leftmost/d(n))
/// at the start of one epoch.  Laplace sums accumulate exp(-s z) and its
/// square per grid point; the histogram is exact on lattice runs (keyed by
/// the integer gap) and fixed-width otherwise (keyed by floor((z-1)/width)).
struct EmpiricalSummary {
  std::size_t epoch = 1;
  double d_n = 1.0;
  std::uint64_t count = 0;
  std::uint64_t replicas = 0;
  std::vector<double> lap_sum, lap_sq;
  double z_sum = 0.0, z_sq = 0.0;
  bool lattice_bins = true;
  double bin_width = 1e-2;  // adaptive mode only, in z units
  bool collect_hist = false;
  std::map<std::int64_t, std::uint64_t> hist;

  void init(std::size_t epoch_, double d_n_, const SGrid& g, bool lattice,
            bool with_hist);
  /// Add one observation; on lattice runs pass the raw integer gap too.
  void add(const SGrid& g, double z, std::int64_t gap_units);
  void add_replica() { ++replicas; }
};

struct LaplacePoint {
  double s;
  double value;
  double stderr_;
};

/// Plug-in transform estimate with the naive i.i.d. standard error.
std::vector<LaplacePoint> empirical_laplace(const EmpiricalSummary& sum,
                                            const SGrid& g);

/// Pointwise sum of two summaries of the same epoch/shape.  Associative and
/// commutative up to float addition order; counts merge exactly.
EmpiricalSummary merge_summaries(const EmpiricalSummary& a,
                                 const EmpiricalSummary& b);

}  // namespace hcp
