#include "hcp/summary.hpp"

#include <cmath>
#include <stdexcept>

namespace hcp {

SGrid SGrid::log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw std::invalid_argument("s-grid: need 0 < lo < hi and >= 2 points");
  SGrid g;
  g.s.resize(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    g.s[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  g.s.front() = lo;
  g.s.back() = hi;
  return g;
}

void EmpiricalSummary::init(std::size_t epoch_, double d_n_, const SGrid& g,
                            bool lattice, bool with_hist) {
  epoch = epoch_;
  d_n = d_n_;
  count = 0;
  replicas = 0;
  lap_sum.assign(g.s.size(), 0.0);
  lap_sq.assign(g.s.size(), 0.0);
  z_sum = z_sq = 0.0;
  lattice_bins = lattice;
  collect_hist = with_hist;
  hist.clear();
}

void EmpiricalSummary::add(const SGrid& g, double z, std::int64_t gap_units) {
  ++count;
  z_sum += z;
  z_sq += z * z;
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    const double e = std::exp(-g.s[i] * z);
    lap_sum[i] += e;
    lap_sq[i] += e * e;
  }
  if (collect_hist) {
    const std::int64_t key =
        lattice_bins ? gap_units
                     : static_cast<std::int64_t>(std::floor((z - 1.0) / bin_width));
    ++hist[key];
  }
}

std::vector<LaplacePoint> empirical_laplace(const EmpiricalSummary& sum,
                                            const SGrid& g) {
  if (sum.lap_sum.size() != g.s.size())
    throw std::invalid_argument("empirical_laplace: grid size mismatch");
  std::vector<LaplacePoint> out(g.s.size());
  const double n = static_cast<double>(sum.count);
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    const double mean = sum.count ? sum.lap_sum[i] / n : 0.0;
    double var = 0.0;
    if (sum.count > 1) var = std::max(0.0, sum.lap_sq[i] / n - mean * mean);
    out[i] = {g.s[i], mean, sum.count ? std::sqrt(var / n) : 0.0};
  }
  return out;
}

EmpiricalSummary merge_summaries(const EmpiricalSummary& a,
                                 const EmpiricalSummary& b) {
  if (a.epoch != b.epoch || a.d_n != b.d_n ||
      a.lap_sum.size() != b.lap_sum.size() ||
      a.lattice_bins != b.lattice_bins ||
      (!a.lattice_bins && a.bin_width != b.bin_width))
    throw std::invalid_argument("merge_summaries: incompatible summaries");
  EmpiricalSummary m = a;
  m.count += b.count;
  m.replicas += b.replicas;
  for (std::size_t i = 0; i < m.lap_sum.size(); ++i) {
    m.lap_sum[i] += b.lap_sum[i];
    m.lap_sq[i] += b.lap_sq[i];
  }
  m.z_sum += b.z_sum;
  m.z_sq += b.z_sq;
  m.collect_hist = a.collect_hist || b.collect_hist;
  for (const auto& [k, v] : b.hist) m.hist[k] += v;
  return m;
}

}  // namespace hcp
