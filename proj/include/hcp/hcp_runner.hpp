#pragma once

#include <cstdint>
#include <vector>

#include "hcp/ocp.hpp"
#include "hcp/schedule.hpp"
#include "hcp/spp.hpp"
#include "hcp/summary.hpp"

namespace hcp {

struct RunnerOptions {
  std::size_t epochs = 2;        // summaries at epoch starts 1..epochs
  std::size_t n_intervals = 1000;
  Topology topology = Topology::torus;
  std::uint64_t seed = 1;
  std::uint64_t replicas = 1;
  unsigned workers = 1;
  SGrid sgrid = SGrid::log_spaced();
  bool collect_interval = true;
  bool collect_leftmost = false;  // half-line only: leftmost point / d(n)
  bool collect_hist = false;
};

struct EpochDiag {
  std::uint64_t events = 0, stale_pops = 0;
  std::uint64_t exhausted = 0;        // replicas that dropped to <= 1 point here
  std::uint64_t frontier_lost = 0;    // replicas whose frontier hit the origin
  std::size_t min_points_after = 0;
  std::size_t min_frontier_after = 0;
};

struct HcpResult {
  std::vector<EmpiricalSummary> interval;  // indexed by epoch-1
  std::vector<EmpiricalSummary> leftmost;  // half-line runs only
  std::vector<EpochDiag> diag;             // transition n -> n+1 at index n-1
  bool truncated = false;                  // some replica exhausted early
  bool lattice = false;
};

/// Sample `replicas` initial conditions, run the epoch chain, and summarize
/// rescaled gaps (and optionally the leftmost point) at the start of each
/// epoch.  Epoch n start means n-1 transitions have run; gaps past the
/// frontier are discarded on the half line, and the torus wrap gap is
/// excluded below three points.
///
/// Replica r always draws from RNG stream r of `seed`, and summaries are
/// reduced in fixed replica-block order, so results are byte-identical for
/// any worker count.
HcpResult run_hcp(const IntervalLaw& law, const ModelSpec& model,
                  const EpochSchedule& sched, const RunnerOptions& opt);

}  // namespace hcp
