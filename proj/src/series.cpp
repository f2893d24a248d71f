#include "hcp/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

std::vector<double> series_mul(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t max_order) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = std::min(max_order + 1, a.size() + b.size() - 1);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0.0) continue;
    const std::size_t jmax = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<double> series_log(const std::vector<double>& b) {
  if (b.empty() || b[0] != 1.0)
    throw std::invalid_argument("series_log: constant term must be 1");
  const std::size_t n = b.size();
  std::vector<double> l(n, 0.0);
  // n*l_n = n*b_n - sum_{k=1}^{n-1} k*l_k*b_{n-k}
  for (std::size_t m = 1; m < n; ++m) {
    double acc = static_cast<double>(m) * b[m];
    for (std::size_t k = 1; k < m; ++k)
      acc -= static_cast<double>(k) * l[k] * b[m - k];
    l[m] = acc / static_cast<double>(m);
  }
  return l;
}

std::vector<double> series_exp(const std::vector<double>& a) {
  if (!a.empty() && a[0] != 0.0)
    throw std::invalid_argument("series_exp: constant term must be 0");
  const std::size_t n = std::max<std::size_t>(a.size(), 1);
  std::vector<double> e(n, 0.0);
  e[0] = 1.0;
  // n*e_n = sum_{k=1}^{n} k*a_k*e_{n-k}
  for (std::size_t m = 1; m < n; ++m) {
    double acc = 0.0;
    const std::size_t kmax = std::min(m, a.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k)
      acc += static_cast<double>(k) * a[k] * e[m - k];
    e[m] = acc / static_cast<double>(m);
  }
  return e;
}

std::vector<double> series_div(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t max_order) {
  if (b.empty() || b[0] == 0.0)
    throw std::invalid_argument("series_div: divisor constant term is 0");
  const std::size_t n = max_order + 1;
  std::vector<double> q(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = m < a.size() ? a[m] : 0.0;
    const std::size_t kmax = std::min(m, b.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= b[k] * q[m - k];
    q[m] = acc / b[0];
  }
  return q;
}

std::vector<double> series_compose(const std::vector<double>& f,
                                   const std::vector<double>& g,
                                   std::size_t max_order) {
  if (!g.empty() && g.size() > 0 && g[0] != 0.0)
    throw std::invalid_argument("series_compose: inner constant term must be 0");
  std::vector<double> out(1, 0.0);
  // Horner: out = f_K, then out = out*g + f_{k} going down.
  for (std::size_t k = f.size(); k-- > 0;) {
    out = series_mul(out, g, max_order);
    if (out.empty()) out.assign(1, 0.0);
    out[0] += f[k];
  }
  return out;
}

std::vector<double> series_reversion(const std::vector<double>& f) {
  if (f.size() < 2 || f[0] != 0.0 || f[1] != 1.0)
    throw std::invalid_argument("series_reversion: need f = x + O(x^2)");
  const std::size_t K = f.size() - 1;  // highest order carried
  std::vector<double> r(K + 1, 0.0);
  r[1] = 1.0;
  for (std::size_t m = 2; m <= K; ++m) {
    // With r known through order m-1 and r_m = 0, the x^m coefficient of
    // f(r) is off by exactly r_m (the f_1 * r_m term).
    std::vector<double> fr = series_compose(
        std::vector<double>(f.begin(), f.begin() + static_cast<long>(m) + 1),
        std::vector<double>(r.begin(), r.begin() + static_cast<long>(m)), m);
    r[m] = -(fr.size() > m ? fr[m] : 0.0);
  }
  return r;
}

}  // namespace hcp
