#include "hcp/grid_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hcp {

double GridMeasure::total() const {
  double t = 0.0;
  for (double w : mass) t += w;
  return t;
}

double GridMeasure::mean() const {
  double t = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) t += mass[j] * site(j);
  return t;
}

double GridMeasure::second_moment() const {
  double t = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    const double x = site(j);
    t += mass[j] * x * x;
  }
  return t;
}

double GridMeasure::laplace(double s) const {
  // Summed from the largest site up so the tiny terms accumulate first.
  double t = 0.0;
  for (std::size_t j = mass.size(); j-- > 0;) {
    t += mass[j] * std::exp(-s * site(j));
  }
  return t;
}

double GridMeasure::laplace_tail_bound(double s) const {
  if (tail_mass == 0.0) return 0.0;
  return tail_mass * std::exp(-s * tail_floor());
}

double GridMeasure::laplace_derivative(double s) const {
  double t = 0.0;
  for (std::size_t j = mass.size(); j-- > 0;) {
    const double x = site(j);
    t -= mass[j] * x * std::exp(-s * x);
  }
  return t;
}

double GridMeasure::mass_below(double z) const {
  double t = 0.0;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (site(j) >= z) break;
    t += mass[j];
  }
  return t;
}

GridMeasure GridMeasure::renormalized() const {
  const double t = total() + tail_mass;
  if (!(t > 0.0)) throw std::domain_error("renormalized: nonpositive total mass");
  GridMeasure out = *this;
  for (double& w : out.mass) w /= t;
  out.tail_mass /= t;
  return out;
}

GridMeasure convolve(const GridMeasure& a, const GridMeasure& b,
                     std::int64_t max_site_units) {
  if (a.step != b.step)
    throw std::invalid_argument("convolve: lattice steps differ");
  GridMeasure out;
  out.step = a.step;
  out.first = a.first + b.first;
  const double tot_a = a.total(), tot_b = b.total();
  out.tail_mass = a.tail_mass * (tot_b + b.tail_mass) + tot_a * b.tail_mass;
  if (out.first > max_site_units) {
    out.tail_mass += tot_a * tot_b;
    out.first = max_site_units;
    return out;
  }
  const std::size_t len =
      static_cast<std::size_t>(max_site_units - out.first) + 1;
  out.mass.assign(std::min(len, a.size() + b.size() - 1), 0.0);
  double dropped = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double wa = a.mass[i];
    if (wa == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t k = i + j;
      if (k < out.mass.size())
        out.mass[k] += wa * b.mass[j];
      else
        dropped += wa * b.mass[j];
    }
  }
  out.tail_mass += dropped;
  return out;
}

double tv_distance(const GridMeasure& a, const GridMeasure& b) {
  std::map<std::int64_t, double> diff;  // keyed by site index in common units
  if (a.step != b.step)
    throw std::invalid_argument("tv_distance: lattice steps differ");
  for (std::size_t j = 0; j < a.size(); ++j)
    diff[a.first + static_cast<std::int64_t>(j)] += a.mass[j];
  for (std::size_t j = 0; j < b.size(); ++j)
    diff[b.first + static_cast<std::int64_t>(j)] -= b.mass[j];
  double l1 = 0.0;
  for (auto& [k, v] : diff) l1 += std::fabs(v);
  return 0.5 * (l1 + std::fabs(a.tail_mass - b.tail_mass));
}

}  // namespace hcp
