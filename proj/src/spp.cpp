#include "hcp/spp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

IntervalLaw interval_law_delta(std::int64_t k, double h) {
  if (k < 1 || !(h > 0.0))
    throw std::invalid_argument("delta law: need k >= 1, h > 0");
  IntervalLaw law;
  law.grid.step = h;
  law.grid.first = k;
  law.grid.mass = {1.0};
  law.finite_mean = true;
  law.mean = static_cast<double>(k) * h;
  law.name = "delta";
  return law;
}

IntervalLaw interval_law_geometric(double p, std::int64_t x_max, double h) {
  if (!(p > 0.0 && p < 1.0) || x_max < 1)
    throw std::invalid_argument("geometric law: need 0 < p < 1, x_max >= 1");
  IntervalLaw law;
  law.grid.step = h;
  law.grid.first = 1;
  law.grid.mass.resize(static_cast<std::size_t>(x_max));
  double w = p;
  for (auto& m : law.grid.mass) {
    m = w;
    w *= 1.0 - p;
  }
  law.grid.tail_mass = std::pow(1.0 - p, static_cast<double>(x_max));
  law.finite_mean = true;
  law.mean = h / p;
  law.name = "geometric";
  return law;
}

IntervalLaw interval_law_zeta_tail(double alpha, std::int64_t x_max) {
  if (!(alpha > 0.0) || x_max < 2)
    throw std::invalid_argument("zeta_tail law: need alpha > 0, x_max >= 2");
  IntervalLaw law;
  law.grid.step = 1.0;
  law.grid.first = 1;
  law.grid.mass.assign(static_cast<std::size_t>(x_max), 0.0);
  // P(X > x) = x^(-alpha) on integers; the mass at 1 is zero.
  for (std::int64_t k = 2; k <= x_max; ++k)
    law.grid.mass[static_cast<std::size_t>(k - 1)] =
        std::pow(static_cast<double>(k - 1), -alpha) -
        std::pow(static_cast<double>(k), -alpha);
  law.grid.tail_mass = std::pow(static_cast<double>(x_max), -alpha);
  law.finite_mean = alpha > 1.0;
  law.mean = 0.0;
  if (law.finite_mean) {
    for (std::size_t j = 0; j < law.grid.mass.size(); ++j)
      law.mean += law.grid.mass[j] * law.grid.site(j);
    // Tail contribution to the ideal mean, integral comparison both sides.
    law.mean += law.grid.tail_mass * static_cast<double>(x_max) +
                std::pow(static_cast<double>(x_max), 1.0 - alpha) / (alpha - 1.0);
  }
  law.name = "zeta_tail";
  return law;
}

IntervalLaw interval_law_custom(GridMeasure grid, bool finite_mean,
                                std::string name) {
  IntervalLaw law;
  law.mean = finite_mean ? grid.mean() + grid.tail_mass * grid.tail_floor() : 0.0;
  law.grid = std::move(grid);
  law.finite_mean = finite_mean;
  law.name = std::move(name);
  return law;
}

AliasTable::AliasTable(const GridMeasure& law)
    : step_(law.step), first_(law.first) {
  const std::size_t n = law.size();
  if (n == 0) throw std::invalid_argument("alias table: empty law");
  std::vector<double> p(law.mass);
  p.back() += law.tail_mass;  // fold the truncated tail into the last site
  double tot = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("alias table: negative mass");
    tot += v;
  }
  if (std::fabs(tot - 1.0) > 1e-9)
    throw std::invalid_argument("alias table: law total differs from 1");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<std::uint32_t> small, large;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = p[i] / tot * static_cast<double>(n);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t i : large) prob_[i] = 1.0;
  for (std::uint32_t i : small) prob_[i] = 1.0;  // round-off leftovers
}

std::size_t AliasTable::draw_index(CounterRng& rng) const {
  const std::size_t n = prob_.size();
  std::size_t i = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(n));
  if (i >= n) i = n - 1;
  return rng.next_unit() < prob_[i] ? i : alias_[i];
}

Configuration sample_ren_pinned(const IntervalLaw& law, std::size_t n_intervals,
                                CounterRng& rng) {
  AliasTable alias(law.grid);
  Configuration c;
  c.topology = Topology::half_line;
  c.points.reserve(n_intervals + 1);
  c.points.push_back(0.0);
  if (law.grid.integer_lattice()) {
    std::int64_t pos = 0;
    for (std::size_t i = 0; i < n_intervals; ++i) {
      pos += alias.draw_site_units(rng);
      c.points.push_back(static_cast<double>(pos));
    }
  } else {
    double pos = 0.0;
    for (std::size_t i = 0; i < n_intervals; ++i) {
      pos += alias.draw_site(rng);
      c.points.push_back(pos);
    }
  }
  c.frontier = n_intervals;  // the final point already feels the truncation
  return c;
}

Configuration sample_ren_cycle(const IntervalLaw& law, std::size_t n_intervals,
                               CounterRng& rng) {
  if (n_intervals == 0) throw std::invalid_argument("cycle: need >= 1 interval");
  AliasTable alias(law.grid);
  Configuration c;
  c.topology = Topology::torus;
  c.points.reserve(n_intervals);
  if (law.grid.integer_lattice()) {
    std::int64_t pos = 0;
    for (std::size_t i = 0; i + 1 < n_intervals; ++i) {
      c.points.push_back(static_cast<double>(pos));
      pos += alias.draw_site_units(rng);
    }
    c.points.push_back(static_cast<double>(pos));
    pos += alias.draw_site_units(rng);
    c.circumference = static_cast<double>(pos);
  } else {
    double pos = 0.0;
    for (std::size_t i = 0; i < n_intervals; ++i) {
      c.points.push_back(pos);
      pos += alias.draw_site(rng);
    }
    c.circumference = pos;
  }
  return c;
}

namespace {

AliasTable size_biased_table(const IntervalLaw& law) {
  if (!law.finite_mean)
    throw std::domain_error("stationary sampler: law has infinite mean");
  if (law.grid.tail_mass > 1e-9)
    throw std::domain_error("stationary sampler: truncated tail too heavy");
  GridMeasure sb = law.grid;
  sb.tail_mass = 0.0;
  for (std::size_t j = 0; j < sb.mass.size(); ++j) sb.mass[j] *= sb.site(j);
  return AliasTable(sb.renormalized());
}

}  // namespace

Configuration sample_ren_stationary(const IntervalLaw& law, double window_lo,
                                    double window_hi, CounterRng& rng) {
  if (!(window_lo <= 0.0 && 0.0 <= window_hi && window_lo < window_hi))
    throw std::invalid_argument("stationary sampler: window must contain 0");
  AliasTable sb = size_biased_table(law);
  AliasTable gaps(law.grid);

  const double D = sb.draw_site(rng);        // straddling interval, size-biased
  const double x0 = -rng.next_unit() * D;    // uniform origin inside it
  const double x1 = x0 + D;

  std::vector<double> left;  // points <= x0, found rightmost-first
  double pos = x0;
  while (pos >= window_lo) {
    left.push_back(pos);
    pos -= gaps.draw_site(rng);
  }
  Configuration c;
  c.topology = Topology::window;
  c.window_lo = window_lo;
  c.window_hi = window_hi;
  for (auto it = left.rbegin(); it != left.rend(); ++it)
    if (*it >= window_lo && *it <= window_hi) c.points.push_back(*it);
  pos = x1;
  while (pos <= window_hi) {
    c.points.push_back(pos);
    pos += gaps.draw_site(rng);
  }
  return c;
}

Configuration sample_ren_stationary_torus(const IntervalLaw& law,
                                          double circumference, double d_min,
                                          CounterRng& rng) {
  if (!(circumference >= d_min))
    throw std::invalid_argument("stationary torus: circumference below d_min");
  AliasTable gaps(law.grid);
  Configuration c;
  c.topology = Topology::torus;
  c.circumference = circumference;
  c.points.push_back(0.0);
  double pos = 0.0;
  while (true) {
    const double g = gaps.draw_site(rng);
    if (pos + g < circumference) {
      pos += g;
      c.points.push_back(pos);
      continue;
    }
    if (circumference - pos >= d_min) break;  // legal wrap gap: accept
    if (c.points.size() == 1) break;          // lone origin: wrap = L
    c.points.pop_back();                      // resample the final gap
    pos = c.points.back();
  }
  return c;
}

Configuration sample_ren_z(const IntervalLaw& law, double window_lo,
                           double window_hi, CounterRng& rng) {
  if (!law.grid.integer_lattice())
    throw std::invalid_argument("lattice sampler: law must live on the integers");
  if (!(window_lo <= 0.0 && 0.0 <= window_hi && window_lo < window_hi))
    throw std::invalid_argument("lattice sampler: window must contain 0");
  AliasTable sb = size_biased_table(law);
  AliasTable gaps(law.grid);

  const std::int64_t D = sb.draw_site_units(rng);
  const std::int64_t off =
      std::min<std::int64_t>(D - 1, static_cast<std::int64_t>(
                                        rng.next_unit() * static_cast<double>(D)));
  const std::int64_t x0 = -off;
  const std::int64_t x1 = x0 + D;

  std::vector<std::int64_t> pts;
  std::int64_t pos = x0;
  std::vector<std::int64_t> left;
  while (static_cast<double>(pos) >= window_lo) {
    left.push_back(pos);
    pos -= gaps.draw_site_units(rng);
  }
  for (auto it = left.rbegin(); it != left.rend(); ++it) pts.push_back(*it);
  pos = x1;
  while (static_cast<double>(pos) <= window_hi) {
    pts.push_back(pos);
    pos += gaps.draw_site_units(rng);
  }
  Configuration c;
  c.topology = Topology::window;
  c.window_lo = window_lo;
  c.window_hi = window_hi;
  for (std::int64_t p : pts)
    if (static_cast<double>(p) >= window_lo && static_cast<double>(p) <= window_hi)
      c.points.push_back(static_cast<double>(p));
  return c;
}

}  // namespace hcp
