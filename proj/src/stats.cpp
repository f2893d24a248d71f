#include "hcp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

double ks_distance_lattice(const GridMeasure& a, const GridMeasure& b) {
  // merge the two site lists by position; equal positions advance both
  double ca = 0.0, cb = 0.0, best = 0.0;
  std::size_t i = 0, j = 0;
  auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
  };
  while (i < a.mass.size() || j < b.mass.size()) {
    const double pa = i < a.mass.size() ? a.site(i) : 0.0;
    const double pb = j < b.mass.size() ? b.site(j) : 0.0;
    if (j >= b.mass.size() || (i < a.mass.size() && pa < pb && !close(pa, pb))) {
      ca += a.mass[i++];
    } else if (i >= a.mass.size() || (pb < pa && !close(pa, pb))) {
      cb += b.mass[j++];
    } else {
      ca += a.mass[i++];
      cb += b.mass[j++];
    }
    best = std::max(best, std::abs(ca - cb));
  }
  return best;
}

double dkw_band(std::uint64_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("dkw_band: n must be positive");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

GridMeasure empirical_lattice_measure(const std::map<std::int64_t, std::uint64_t>& hist,
                                      std::uint64_t count) {
  GridMeasure g;
  g.step = 1.0;
  if (hist.empty() || count == 0) return g;
  g.first = hist.begin()->first;
  const std::int64_t last = hist.rbegin()->first;
  g.mass.assign(static_cast<std::size_t>(last - g.first + 1), 0.0);
  const double inv = 1.0 / static_cast<double>(count);
  for (const auto& [site, c] : hist)
    g.mass[static_cast<std::size_t>(site - g.first)] = static_cast<double>(c) * inv;
  return g;
}

double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sup_abs_diff: length mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double chi_square_stat(const std::vector<std::uint64_t>& obs,
                       const std::vector<double>& prob, std::uint64_t n) {
  if (obs.size() != prob.size())
    throw std::invalid_argument("chi_square_stat: length mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double e = prob[i] * static_cast<double>(n);
    if (e < 1e-12) {
      if (obs[i] != 0)
        throw std::invalid_argument("chi_square_stat: observation in zero-probability cell");
      continue;
    }
    const double d = static_cast<double>(obs[i]) - e;
    stat += d * d / e;
  }
  return stat;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");
  // Acklam's rational approximation, |relative error| < 1.15e-9
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > phigh) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double chi_square_quantile(double dof, double prob) {
  if (dof <= 0.0) throw std::invalid_argument("chi_square_quantile: dof <= 0");
  const double z = inverse_normal_cdf(prob);
  const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  return dof * t * t * t;
}

}  // namespace hcp
