#include "hcp/configuration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcp {

double Configuration::min_gap() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i)
    m = std::min(m, points[i] - points[i - 1]);
  if (topology == Topology::torus && points.size() >= 2)
    m = std::min(m, circumference - points.back() + points.front());
  return m;
}

void Configuration::check(double d_min, double slack) const {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]))
      throw std::invalid_argument("configuration: points not strictly increasing");
  if (topology == Topology::torus) {
    if (!points.empty() &&
        (points.front() < 0.0 || points.back() >= circumference))
      throw std::invalid_argument("configuration: torus points outside [0, L)");
  } else if (topology == Topology::window) {
    if (!points.empty() &&
        (points.front() < window_lo || points.back() > window_hi))
      throw std::invalid_argument("configuration: points outside window");
  } else {
    if (!points.empty() && points.front() < 0.0)
      throw std::invalid_argument("configuration: half-line points must be >= 0");
  }
  if (points.size() >= 2 && min_gap() < d_min - slack)
    throw std::invalid_argument("configuration: gap below d_min");
}

}  // namespace hcp
