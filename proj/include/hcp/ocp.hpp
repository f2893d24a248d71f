#pragma once

#include <cstdint>
#include <vector>

#include "hcp/configuration.hpp"
#include "hcp/rates.hpp"
#include "hcp/rng.hpp"

namespace hcp {

struct ActiveDomain {
  std::size_t left_index;  // index of the left endpoint in the configuration
  double length;
  double rate_total;
};

/// Domains of the configuration whose length falls in the table's active
/// window with positive total rate.  On a torus this includes the wrap
/// domain (left index = last point).
std::vector<ActiveDomain> active_domains(const Configuration& c,
                                         const RateTable& rates);

struct EpochTrace {
  std::uint64_t events = 0;          // fired erasures
  std::uint64_t fired_left = 0, fired_right = 0, fired_both = 0;
  std::uint64_t stale_pops = 0;      // lazily deleted queue entries
  double final_time = 0.0;           // time of the last fired event
  std::size_t points_before = 0, points_after = 0;
  std::size_t active_before = 0;
  std::size_t frontier_before = 0, frontier_after = 0;  // half-line only
};

/// Run one epoch to absorption, in place.
///
/// Every active domain carries an exponential clock with its total rate; the
/// earliest clock fires and erases the left extreme, the right extreme, or
/// both, with probabilities proportional to the three rates.  Domains created
/// by a merge are never active again within the epoch (requires
/// d_max <= 2 d_min, which is checked), so the queue only drains: events are
/// bounded by the initial active count.  Clocks of absorbed domains die via
/// generation counters; ties break on (time, domain creation index).
///
/// On the half line the configuration is a truncation of an infinite one, so
/// any merge whose right end reaches the frontier drags the frontier to the
/// merge's left end; statistics must ignore points past it.  Window
/// configurations are observation-only and are rejected here.
EpochTrace run_epoch(Configuration& c, const RateTable& rates, CounterRng& rng);

/// Scratch buffers reusable across run_epoch calls (one per worker thread).
struct EpochWorkspace {
  struct Entry {
    double time;
    std::int32_t dom;
    std::uint32_t gen;
  };
  std::vector<double> pts;
  std::vector<std::int32_t> prev, next;
  std::vector<std::uint32_t> gen;
  std::vector<std::uint8_t> dead;
  std::vector<Entry> heap;
};

EpochTrace run_epoch(Configuration& c, const RateTable& rates, CounterRng& rng,
                     EpochWorkspace& ws);

}  // namespace hcp
