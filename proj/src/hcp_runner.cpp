#include "hcp/hcp_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hcp {

namespace {

constexpr std::size_t kBlock = 16;  // replicas per reduction block (fixed so
                                    // results do not depend on worker count)

struct BlockOut {
  std::vector<EmpiricalSummary> interval, leftmost;
  std::vector<EpochDiag> diag;
  std::uint64_t truncated = 0;
};

void init_summaries(std::vector<EmpiricalSummary>& v, const RunnerOptions& opt,
                    const EpochSchedule& sched, bool lattice, bool hist) {
  v.resize(opt.epochs);
  for (std::size_t n = 1; n <= opt.epochs; ++n)
    v[n - 1].init(n, sched.d(n), opt.sgrid, lattice, hist);
}

void collect_epoch(const Configuration& c, std::size_t n, double d_n,
                   const RunnerOptions& opt, bool lattice,
                   std::vector<EmpiricalSummary>& interval,
                   std::vector<EmpiricalSummary>& leftmost, EpochDiag* diag) {
  if (opt.collect_interval) {
    auto& sum = interval[n - 1];
    sum.add_replica();
    const auto& p = c.points;
    if (c.topology == Topology::torus) {
      const std::size_t np = p.size();
      for (std::size_t i = 1; i < np; ++i) {
        const double g = p[i] - p[i - 1];
        sum.add(opt.sgrid, g / d_n, lattice ? std::llround(g) : 0);
      }
      if (np >= 3) {  // wrap gap only when enough points remain
        const double g = c.circumference - p.back() + p.front();
        sum.add(opt.sgrid, g / d_n, lattice ? std::llround(g) : 0);
      }
    } else {
      const std::size_t trusted = c.trusted_points();
      for (std::size_t i = 1; i < trusted; ++i) {
        const double g = p[i] - p[i - 1];
        sum.add(opt.sgrid, g / d_n, lattice ? std::llround(g) : 0);
      }
    }
  }
  if (opt.collect_leftmost && c.topology == Topology::half_line) {
    auto& sum = leftmost[n - 1];
    sum.add_replica();
    if (c.trusted_points() >= 1) {
      const double y = c.points.front();
      sum.add(opt.sgrid, y / d_n, lattice ? std::llround(y) : 0);
    } else if (diag) {
      ++diag->frontier_lost;
    }
  }
}

}  // namespace

HcpResult run_hcp(const IntervalLaw& law, const ModelSpec& model,
                  const EpochSchedule& sched, const RunnerOptions& opt) {
  if (opt.epochs < 1) throw std::invalid_argument("run_hcp: need >= 1 epoch");
  if (opt.replicas < 1) throw std::invalid_argument("run_hcp: need >= 1 replica");
  if (opt.topology == Topology::window)
    throw std::invalid_argument("run_hcp: window topology is observation-only");
  if (opt.collect_leftmost && opt.topology != Topology::half_line)
    throw std::invalid_argument("run_hcp: leftmost statistics need the half line");

  const bool lattice =
      law.grid.integer_lattice() && sched.integer_valued(opt.epochs + 1);

  // Shared per-transition rate tables; engine and ODE read the same values.
  std::vector<RateTable> rates;
  rates.reserve(opt.epochs);
  for (std::size_t n = 1; n < opt.epochs; ++n)
    rates.push_back(make_rate_spec(model, sched, n));

  const std::size_t nblocks = (opt.replicas + kBlock - 1) / kBlock;
  std::vector<BlockOut> blocks(nblocks);
  std::atomic<std::size_t> next_block{0};

  auto worker = [&]() {
    EpochWorkspace ws;
    for (;;) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= nblocks) return;
      BlockOut& out = blocks[b];
      init_summaries(out.interval, opt, sched, lattice, opt.collect_hist);
      init_summaries(out.leftmost, opt, sched, lattice, false);
      out.diag.resize(opt.epochs - 1);
      for (auto& d : out.diag) {
        d.min_points_after = std::numeric_limits<std::size_t>::max();
        d.min_frontier_after = std::numeric_limits<std::size_t>::max();
      }
      const std::uint64_t r_lo = b * kBlock;
      const std::uint64_t r_hi =
          std::min<std::uint64_t>(opt.replicas, r_lo + kBlock);
      for (std::uint64_t r = r_lo; r < r_hi; ++r) {
        CounterRng rng(opt.seed, r);
        Configuration c = opt.topology == Topology::torus
                              ? sample_ren_cycle(law, opt.n_intervals, rng)
                              : sample_ren_pinned(law, opt.n_intervals, rng);
        for (std::size_t n = 1; n <= opt.epochs; ++n) {
          collect_epoch(c, n, sched.d(n), opt, lattice, out.interval,
                        out.leftmost, n > 1 ? &out.diag[n - 2] : nullptr);
          if (n == opt.epochs) break;
          const EpochTrace tr = run_epoch(c, rates[n - 1], rng, ws);
          EpochDiag& d = out.diag[n - 1];
          d.events += tr.events;
          d.stale_pops += tr.stale_pops;
          d.min_points_after = std::min(d.min_points_after, tr.points_after);
          if (opt.topology == Topology::half_line)
            d.min_frontier_after =
                std::min(d.min_frontier_after, tr.frontier_after);
          if (c.points.size() <= 1) {
            ++d.exhausted;
            ++out.truncated;
            break;
          }
        }
      }
    }
  };

  const unsigned nw = std::max(1u, opt.workers);
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < nw; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  HcpResult res;
  res.lattice = lattice;
  init_summaries(res.interval, opt, sched, lattice, opt.collect_hist);
  init_summaries(res.leftmost, opt, sched, lattice, false);
  res.diag.resize(opt.epochs - 1);
  for (auto& d : res.diag) {
    d.min_points_after = std::numeric_limits<std::size_t>::max();
    d.min_frontier_after = std::numeric_limits<std::size_t>::max();
  }
  for (const BlockOut& out : blocks) {
    for (std::size_t e = 0; e < opt.epochs; ++e) {
      res.interval[e] = merge_summaries(res.interval[e], out.interval[e]);
      res.leftmost[e] = merge_summaries(res.leftmost[e], out.leftmost[e]);
    }
    for (std::size_t e = 0; e + 1 < opt.epochs; ++e) {
      EpochDiag& d = res.diag[e];
      const EpochDiag& s = out.diag[e];
      d.events += s.events;
      d.stale_pops += s.stale_pops;
      d.exhausted += s.exhausted;
      d.frontier_lost += s.frontier_lost;
      d.min_points_after = std::min(d.min_points_after, s.min_points_after);
      d.min_frontier_after = std::min(d.min_frontier_after, s.min_frontier_after);
    }
    res.truncated = res.truncated || out.truncated > 0;
  }
  if (!opt.collect_leftmost) res.leftmost.clear();
  if (!opt.collect_interval) res.interval.clear();
  return res;
}

}  // namespace hcp
