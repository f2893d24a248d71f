// Independent reference implementations the unit tests check the library
// against.  Everything here is written the slow, obvious way on purpose:
// literal convolution-power sums, exhaustive race enumeration, quadrature.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "hcp/grid_measure.hpp"
#include "hcp/rates.hpp"

namespace oracle {

// a*b on the unit lattice starting at site a.first+b.first, truncated.
inline std::vector<double> conv_unit(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     std::size_t max_len) {
  std::vector<double> out(std::min(max_len, a.size() + b.size() - 1), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

// sum_k c[k] * base^{*k} for a measure on the unit lattice with first site
// `first` >= 1, truncated at site x_max.  c is 1-indexed.
inline hcp::GridMeasure series_apply_literal(const std::vector<double>& c,
                                             const hcp::GridMeasure& base,
                                             std::int64_t x_max) {
  const std::size_t len = static_cast<std::size_t>(x_max - base.first + 1);
  std::vector<double> acc(len, 0.0);
  std::vector<double> power(base.mass.begin(), base.mass.end());
  std::int64_t power_first = base.first;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (power_first > x_max) break;
    const std::size_t avail = static_cast<std::size_t>(x_max - power_first + 1);
    for (std::size_t i = 0; i < power.size() && i < avail; ++i)
      acc[static_cast<std::size_t>(power_first - base.first) + i] += c[k] * power[i];
    if (k + 1 < c.size()) {
      const std::int64_t next_first = power_first + base.first;
      if (next_first > x_max) break;
      power = conv_unit(power, base.mass,
                        static_cast<std::size_t>(x_max - next_first + 1));
      power_first = next_first;
    }
  }
  hcp::GridMeasure out;
  out.step = base.step;
  out.first = base.first;
  out.mass = std::move(acc);
  return out;
}

// E1 by Simpson quadrature of the defining integral on [s, s+60].
inline double e1_quadrature(double s) {
  const double hi = s + 60.0;
  const std::size_t n = 600000;  // even
  const double h = (hi - s) / static_cast<double>(n);
  auto f = [](double t) { return std::exp(-t) / t; };
  double acc = f(s) + f(hi);
  for (std::size_t i = 1; i < n; ++i)
    acc += f(s + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Exhaustive law of the absorbing point set for a small torus.  Points are
// identified by index into the initial configuration; outcomes are bitmasks
// of survivors.  At every step each positive-rate gap can fire each of its
// three channels; probabilities are rate fractions of the total.
struct RaceState {
  std::vector<double> pos;       // current points (positions)
  std::vector<unsigned> idx;     // original index of each point
  double circumference = 0.0;
};

inline void race_enumerate(const RaceState& st, const hcp::RateTable& rt,
                           double prob, std::map<std::uint32_t, double>& out) {
  const std::size_t n = st.pos.size();
  struct Fire {
    std::size_t gap;
    int channel;  // 0 left, 1 right, 2 both
    double rate;
  };
  std::vector<Fire> fires;
  double total = 0.0;
  if (n == 1) {
    // lone point: the full-circle gap may still be active; any channel
    // erases the point and leaves the empty set
    if (rt.total(st.circumference) > 0.0) {
      out[0] += prob;
      return;
    }
  }
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      double len = st.pos[j] - st.pos[i];
      if (j <= i) len += st.circumference;
      const double l = rt.left(len), r = rt.right(len), a = rt.both(len);
      if (l > 0) fires.push_back({i, 0, l});
      if (r > 0) fires.push_back({i, 1, r});
      if (a > 0) fires.push_back({i, 2, a});
      total += l + r + a;
    }
  }
  if (fires.empty()) {
    std::uint32_t mask = 0;
    for (unsigned id : st.idx) mask |= 1u << id;
    out[mask] += prob;
    return;
  }
  for (const Fire& f : fires) {
    RaceState next = st;
    const std::size_t i = f.gap, j = (f.gap + 1) % n;
    // gap i is [pos[i], pos[j]]; left fire removes pos[i], right pos[j]
    std::vector<std::size_t> kill;
    if (f.channel == 0) kill = {i};
    else if (f.channel == 1) kill = {j};
    else kill = {i, j};
    std::sort(kill.begin(), kill.end(), std::greater<>());
    kill.erase(std::unique(kill.begin(), kill.end()), kill.end());
    for (std::size_t k : kill) {
      next.pos.erase(next.pos.begin() + static_cast<std::ptrdiff_t>(k));
      next.idx.erase(next.idx.begin() + static_cast<std::ptrdiff_t>(k));
    }
    race_enumerate(next, rt, prob * f.rate / total, out);
  }
}

inline std::map<std::uint32_t, double> race_law(const std::vector<double>& points,
                                                double circumference,
                                                const hcp::RateTable& rt) {
  RaceState st;
  st.pos = points;
  st.circumference = circumference;
  for (unsigned i = 0; i < points.size(); ++i) st.idx.push_back(i);
  std::map<std::uint32_t, double> out;
  race_enumerate(st, rt, 1.0, out);
  return out;
}

}  // namespace oracle
