#include "hcp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hcp/series.hpp"

namespace hcp {

std::vector<double> f_coefficients(const CaseSpec& cs, std::size_t K) {
  if (K < 1) throw std::invalid_argument("f_coefficients: need K >= 1");
  std::vector<double> f(K + 1, 0.0);
  f[1] = 1.0;
  if (cs.kind == UCase::case_i) {
    for (std::size_t k = 2; k <= K; ++k) f[k] = 1.0 / static_cast<double>(k);
    return f;
  }
  const double g = cs.gamma;
  const double a = (g + 1.0) / (g + 2.0);
  double ipow = 1.0 / (g + 1.0);  // (g+1)^(-k)
  for (std::size_t k = 2; k <= K; ++k) {
    ipow /= g + 1.0;
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    f[k] = a / static_cast<double>(k) * (1.0 + sign * ipow);
  }
  return f;
}

SeriesCoefficients r_coefficients(const CaseSpec& cs, std::size_t K) {
  SeriesCoefficients out;
  out.cs = cs;
  out.K = K;
  out.f = f_coefficients(cs, K);
  out.r = series_reversion(out.f);
  const auto comp = series_compose(out.f, out.r, K);
  double res = 0.0;
  for (std::size_t k = 0; k < comp.size(); ++k)
    res = std::max(res, std::fabs(comp[k] - (k == 1 ? 1.0 : 0.0)));
  out.composition_residual = res;
  return out;
}

namespace {

// Coefficient array c[x] = mu({x}) for x = 0..x_max on the unit lattice.
std::vector<double> unit_lattice_coeffs(const GridMeasure& mu,
                                        std::int64_t x_max) {
  if (!mu.integer_lattice() || mu.first < 1)
    throw std::invalid_argument("analytic: law must live on the unit lattice in [1, inf)");
  std::vector<double> c(static_cast<std::size_t>(x_max) + 1, 0.0);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const std::int64_t x = mu.first + static_cast<std::int64_t>(j);
    if (x > x_max) break;
    c[static_cast<std::size_t>(x)] = mu.mass[j];
  }
  return c;
}

}  // namespace

GridMeasure m_measure(const GridMeasure& mu, const CaseSpec& cs,
                      std::int64_t x_max) {
  if (x_max < 1) throw std::invalid_argument("m_measure: need x_max >= 1");
  const std::vector<double> c = unit_lattice_coeffs(mu, x_max);
  const std::size_t N = c.size();
  std::vector<double> mcoef(N, 0.0);
  if (cs.kind == UCase::case_i) {
    // m = -log(1 - M)
    std::vector<double> b(N);
    b[0] = 1.0;
    for (std::size_t x = 1; x < N; ++x) b[x] = -c[x];
    const auto l = series_log(b);
    for (std::size_t x = 1; x < N; ++x) mcoef[x] = -l[x];
  } else {
    const double g = cs.gamma;
    const double a = (g + 1.0) / (g + 2.0);
    std::vector<double> bp(N), bm(N);
    bp[0] = bm[0] = 1.0;
    for (std::size_t x = 1; x < N; ++x) {
      bp[x] = c[x] / (g + 1.0);
      bm[x] = -c[x];
    }
    const auto lp = series_log(bp);
    const auto lm = series_log(bm);
    for (std::size_t x = 1; x < N; ++x) mcoef[x] = a * (lp[x] - lm[x]);
  }
  GridMeasure m;
  m.step = 1.0;
  m.first = 1;
  m.mass.assign(mcoef.begin() + 1, mcoef.end());
  return m;
}

double log_sum_h(const GridMeasure& m, double z) { return m.mass_below(z); }

EpochLaw epoch_interval_law(const GridMeasure& m, const CaseSpec& cs,
                            const EpochSchedule& sched, std::size_t n,
                            std::int64_t z_max_units) {
  if (!m.integer_lattice() || m.first != 1)
    throw std::invalid_argument("epoch_interval_law: m must start at 1 on the unit lattice");
  const double dn = sched.d(n);
  if (dn != std::floor(dn) || dn < 1.0)
    throw std::invalid_argument("epoch_interval_law: d(n) must be a positive integer");
  const std::int64_t d = static_cast<std::int64_t>(dn);
  const std::int64_t last = m.first + static_cast<std::int64_t>(m.size()) - 1;
  std::int64_t X = z_max_units < 0 ? last : std::min(z_max_units, last);
  if (X < d)
    throw std::invalid_argument("epoch_interval_law: m truncated before d(n)");

  // Restriction of m to [d, inf) as a series in the (1/d)-lattice variable.
  std::vector<double> Mn(static_cast<std::size_t>(X) + 1, 0.0);
  for (std::int64_t x = d; x <= X; ++x)
    Mn[static_cast<std::size_t>(x)] = m.mass[static_cast<std::size_t>(x - 1)];

  std::vector<double> p;
  if (cs.kind == UCase::case_i) {
    // R(M) = 1 - exp(-M)
    for (auto& v : Mn) v = -v;
    p = series_exp(Mn);
    for (auto& v : p) v = -v;
    p[0] = 0.0;
  } else {
    const double g = cs.gamma;
    const double b = (g + 2.0) / (g + 1.0);
    for (auto& v : Mn) v *= b;
    const auto E = series_exp(Mn);
    std::vector<double> num(E), den(E);
    num[0] -= 1.0;
    den[0] += 1.0 / (g + 1.0);
    p = series_div(num, den, static_cast<std::size_t>(X));
  }

  EpochLaw out;
  double total = 0.0, mn = 0.0;
  for (std::int64_t x = d; x <= X; ++x) {
    double& v = p[static_cast<std::size_t>(x)];
    mn = std::min(mn, v);
    if (v < 0.0) v = 0.0;
    total += v;
  }
  out.min_mass = mn;
  if (mn < -1e-10)
    throw std::domain_error(
        "epoch_interval_law: negative mass beyond tolerance (truncation too aggressive)");
  out.deficit = 1.0 - total;
  out.law.step = 1.0 / static_cast<double>(d);
  out.law.first = d;
  out.law.mass.assign(p.begin() + d, p.end());
  out.law.tail_mass = std::max(0.0, out.deficit);
  return out;
}

double epoch_transform(const GridMeasure& m, const CaseSpec& cs,
                       const EpochSchedule& sched, std::size_t n, double s) {
  const double d = sched.d(n);
  double acc = 0.0;
  for (std::size_t j = m.size(); j-- > 0;) {
    const double x = m.site(j);
    if (x < d) break;
    acc += m.mass[j] * std::exp(-s * x / d);
  }
  return lin_R(cs, acc);
}

double epoch_active_transform(const GridMeasure& m, const EpochSchedule& sched,
                              std::size_t n, double s) {
  const double d = sched.d(n), dnext = sched.d(n + 1);
  double acc = 0.0;
  for (std::size_t j = m.size(); j-- > 0;) {
    const double x = m.site(j);
    if (x < d) break;
    if (x < dnext) acc += m.mass[j] * std::exp(-s * x / d);
  }
  return acc;
}

std::vector<double> recursion_step_laplace(const CaseSpec& cs,
                                           const std::vector<double>& g_n,
                                           const std::vector<double>& h_n) {
  if (g_n.size() != h_n.size())
    throw std::invalid_argument("recursion_step_laplace: size mismatch");
  std::vector<double> out(g_n.size());
  for (std::size_t i = 0; i < g_n.size(); ++i) {
    if (!(g_n[i] < 1.0))
      throw std::domain_error("recursion_step_laplace: transform value must be < 1");
    out[i] = lin_R(cs, lin_F(cs, g_n[i]) - h_n[i]);
  }
  return out;
}

double leftmost_laplace(const GridMeasure& mu, const GridMeasure& m,
                        const CaseSpec& cs, const EpochSchedule& sched,
                        std::size_t n, double s) {
  const double d = sched.d(n);
  if (cs.kind == UCase::case_i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double x = m.site(j);
      if (x >= d) break;
      acc += (1.0 - std::exp(-s * x / d)) * m.mass[j];
    }
    return std::exp(-acc / (1.0 + cs.gamma));
  }
  const double g1 = mu.laplace(s / d);
  const double gn = epoch_transform(m, cs, sched, n, s);
  const double num = 1.0 - gn * gn;
  const double den = 1.0 - g1 * g1;
  if (!(den > 0.0))
    throw std::domain_error("leftmost_laplace: initial transform too close to 1");
  return std::sqrt(num / den) * std::exp(-m.mass_below(d));
}

namespace {

double aitken(double x0, double x1, double x2) {
  const double d1 = x1 - x0, d2 = x2 - x1;
  const double den = d2 - d1;
  if (std::fabs(den) < 1e-14 * std::max(1.0, std::fabs(x2))) return x2;
  return x2 - d2 * d2 / den;
}

}  // namespace

C0Estimate c0_estimate(const GridMeasure& mu) {
  const double tot = mu.total() + mu.tail_mass;
  if (std::fabs(tot - 1.0) > 1e-6)
    throw std::invalid_argument("c0_estimate: law is not normalized");
  std::vector<double> v;
  for (int j = 3; j <= 10; ++j) {
    const double s = std::ldexp(1.0, -j);
    const double g = mu.laplace(s);
    const double dg = mu.laplace_derivative(s);
    v.push_back(-s * dg / (1.0 - g));
  }
  std::vector<double> a1, a2;
  for (std::size_t j = 0; j + 2 < v.size(); ++j)
    a1.push_back(aitken(v[j], v[j + 1], v[j + 2]));
  for (std::size_t j = 0; j + 2 < a1.size(); ++j)
    a2.push_back(aitken(a1[j], a1[j + 1], a1[j + 2]));
  C0Estimate est;
  est.value = a2.back();
  est.residual = std::fabs(a2.back() - a2[a2.size() - 2]);
  est.converged = est.residual < 0.05 && std::isfinite(est.value);
  return est;
}

}  // namespace hcp
