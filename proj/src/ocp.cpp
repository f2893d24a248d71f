#include "hcp/ocp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcp {

namespace {
constexpr double INF = std::numeric_limits<double>::infinity();

// Min-heap order with (time, creation index) tie-break.
struct Later {
  bool operator()(const EpochWorkspace::Entry& a,
                  const EpochWorkspace::Entry& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.dom > b.dom;
  }
};
}  // namespace

std::vector<ActiveDomain> active_domains(const Configuration& c,
                                         const RateTable& rates) {
  std::vector<ActiveDomain> out;
  const std::size_t n = c.points.size();
  if (n == 0) return out;
  const std::size_t ndom =
      c.topology == Topology::torus ? n : (n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < ndom; ++i) {
    double len;
    if (i + 1 < n)
      len = c.points[i + 1] - c.points[i];
    else
      len = c.circumference - c.points[i] + c.points[0];
    if (rates.active(len)) out.push_back({i, len, rates.total(len)});
  }
  return out;
}

EpochTrace run_epoch(Configuration& c, const RateTable& rates, CounterRng& rng) {
  EpochWorkspace ws;
  return run_epoch(c, rates, rng, ws);
}

EpochTrace run_epoch(Configuration& c, const RateTable& rates, CounterRng& rng,
                     EpochWorkspace& ws) {
  if (c.topology == Topology::window)
    throw std::invalid_argument("run_epoch: window configurations are observation-only");
  if (rates.d_max > 2.0 * rates.d_min * (1.0 + 1e-12))
    throw std::invalid_argument(
        "run_epoch: d_max > 2 d_min would let merged domains reactivate");

  EpochTrace tr;
  const std::size_t n = c.points.size();
  tr.points_before = n;
  const bool torus = c.topology == Topology::torus;
  const bool half_line = c.topology == Topology::half_line;

  std::size_t fr_idx = n;  // index of first untrusted point
  if (half_line) {
    // A half-line configuration is treated as the truncation of an infinite
    // one: absent an explicit frontier, the last point is already suspect.
    fr_idx = c.frontier ? std::min(*c.frontier, n) : (n > 0 ? n - 1 : 0);
    tr.frontier_before = fr_idx;
  }
  if (n == 0) {
    tr.frontier_after = 0;
    c.frontier = half_line ? std::optional<std::size_t>(0) : std::nullopt;
    return tr;
  }

  auto& pts = ws.pts;
  auto& prev = ws.prev;
  auto& next = ws.next;
  auto& gen = ws.gen;
  auto& dead = ws.dead;
  auto& heap = ws.heap;
  pts.assign(c.points.begin(), c.points.end());
  prev.resize(n);
  next.resize(n);
  gen.assign(n, 0);
  dead.assign(n, 0);
  heap.clear();

  const std::int32_t nn = static_cast<std::int32_t>(n);
  for (std::int32_t i = 0; i < nn; ++i) {
    prev[static_cast<std::size_t>(i)] = i - 1;
    next[static_cast<std::size_t>(i)] = i + 1 < nn ? i + 1 : (torus ? 0 : -1);
  }
  if (torus) prev[0] = nn - 1;

  const double L = c.circumference;
  auto length_of = [&](std::int32_t i) {
    const std::int32_t j = next[static_cast<std::size_t>(i)];
    if (j < 0) return INF;  // right boundary domain
    double len = pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(i)];
    if (torus && j <= i) len += L;  // wrap (j == i: lone point, full circle)
    return len;
  };

  // Schedule the initial clocks; merged domains are never rescheduled, so the
  // queue only drains from here on.
  double min_len = INF;
  for (std::int32_t i = 0; i < nn; ++i) {
    if (!torus && i == nn - 1) break;
    const double len = length_of(i);
    min_len = std::min(min_len, len);
    if (rates.active(len)) {
      heap.push_back({rng.next_exponential(rates.total(len)), i, 0});
    }
  }
  if (min_len < rates.d_min * (1.0 - 1e-12))
    throw std::invalid_argument("run_epoch: configuration has a gap below d_min");
  tr.active_before = heap.size();
  std::make_heap(heap.begin(), heap.end(), Later{});

  double fr_pos = fr_idx < n ? pts[fr_idx] : INF;

  auto bump = [&](std::int32_t i) { ++gen[static_cast<std::size_t>(i)]; };

  while (!heap.empty()) {
    const EpochWorkspace::Entry e = heap.front();
    std::pop_heap(heap.begin(), heap.end(), Later{});
    heap.pop_back();
    const std::int32_t i = e.dom;
    if (gen[static_cast<std::size_t>(i)] != e.gen) {
      ++tr.stale_pops;
      continue;
    }
    const double len = length_of(i);
    const double lam_l = rates.left(len);
    const double lam_r = rates.right(len);
    const double lam_a = rates.both(len);
    const double u = rng.next_unit() * (lam_l + lam_r + lam_a);

    ++tr.events;
    tr.final_time = e.time;
    const std::int32_t j = next[static_cast<std::size_t>(i)];

    double merge_left = -INF, merge_right = INF;  // merged-domain endpoints
    if (j == i) {
      // Lone point on the full circle: any erasure empties the configuration.
      dead[static_cast<std::size_t>(i)] = 1;
      bump(i);
      ++tr.fired_both;
      continue;
    }
    if (u < lam_l) {
      // Erase the left extreme: the left neighbor absorbs this domain.
      ++tr.fired_left;
      const std::int32_t p = prev[static_cast<std::size_t>(i)];
      dead[static_cast<std::size_t>(i)] = 1;
      bump(i);
      if (p >= 0 && p != i) {
        next[static_cast<std::size_t>(p)] = j;
        prev[static_cast<std::size_t>(j)] = p;
        bump(p);
        merge_left = pts[static_cast<std::size_t>(p)];
      } else {
        prev[static_cast<std::size_t>(j)] = -1;  // head moved right
        merge_left = -INF;
      }
      merge_right = pts[static_cast<std::size_t>(j)];
    } else if (u < lam_l + lam_r) {
      // Erase the right extreme: this domain absorbs its right neighbor.
      ++tr.fired_right;
      const std::int32_t q = next[static_cast<std::size_t>(j)];
      dead[static_cast<std::size_t>(j)] = 1;
      bump(i);
      bump(j);
      if (q == i) {  // two-point cycle collapses to a lone point
        next[static_cast<std::size_t>(i)] = i;
        prev[static_cast<std::size_t>(i)] = i;
      } else {
        next[static_cast<std::size_t>(i)] = q;
        if (q >= 0) prev[static_cast<std::size_t>(q)] = i;
      }
      merge_left = pts[static_cast<std::size_t>(i)];
      merge_right = q >= 0 ? pts[static_cast<std::size_t>(q)] : INF;
    } else {
      // Erase both extremes: left and right neighbors join.
      ++tr.fired_both;
      const std::int32_t p = prev[static_cast<std::size_t>(i)];
      const std::int32_t q = next[static_cast<std::size_t>(j)];
      dead[static_cast<std::size_t>(i)] = 1;
      dead[static_cast<std::size_t>(j)] = 1;
      bump(i);
      bump(j);
      if (p == j || q == i) {
        // Two-point cycle: nothing survives.
        continue;
      }
      if (p >= 0) {
        next[static_cast<std::size_t>(p)] = q;
        bump(p);
        merge_left = pts[static_cast<std::size_t>(p)];
      } else {
        merge_left = -INF;
      }
      if (q >= 0) prev[static_cast<std::size_t>(q)] = p;
      merge_right = q >= 0 ? pts[static_cast<std::size_t>(q)] : INF;
    }

    if (half_line && merge_right >= fr_pos) fr_pos = merge_left;
  }

  // Survivors, in original order.
  std::vector<double> out;
  out.reserve(n);
  std::size_t fr_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (dead[k]) continue;
    out.push_back(pts[k]);
    if (half_line && pts[k] < fr_pos) ++fr_count;
  }
  c.points.swap(out);
  tr.points_after = c.points.size();
  if (half_line) {
    c.frontier = fr_count;
    tr.frontier_after = fr_count;
  } else {
    c.frontier.reset();
  }
  return tr;
}

}  // namespace hcp
