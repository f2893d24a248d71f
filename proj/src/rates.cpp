#include "hcp/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

double RateTable::eval(const std::vector<double>& v, double d) const {
  if (d < d_min || d >= d_max) return 0.0;
  // grid is small; binary search then linear interpolation.
  const auto it = std::upper_bound(grid.begin(), grid.end(), d);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  if (hi == 0) return v.front();
  if (hi >= grid.size()) return v.back();
  const double x0 = grid[hi - 1], x1 = grid[hi];
  const double w = (d - x0) / (x1 - x0);
  return v[hi - 1] + w * (v[hi] - v[hi - 1]);
}

double RateTable::max_total() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    m = std::max(m, lam_l[i] + lam_r[i] + lam_a[i]);
  return m;
}

void RateTable::check() const {
  if (!(d_min > 0.0) || !(d_max > d_min))
    throw std::invalid_argument("rate table: need 0 < d_min < d_max");
  if (grid.size() < 2 || lam_l.size() != grid.size() ||
      lam_r.size() != grid.size() || lam_a.size() != grid.size())
    throw std::invalid_argument("rate table: grid/value size mismatch");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("rate table: grid not strictly increasing");
    for (double v : {lam_l[i], lam_r[i], lam_a[i]})
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("rate table: rates must be finite and >= 0");
  }
  if (!(grid.front() <= d_min) || !(grid.back() >= d_max))
    throw std::invalid_argument("rate table: grid must span [d_min, d_max]");
}

std::string ModelSpec::name() const {
  switch (preset) {
    case ModelPreset::east: return "east";
    case ModelPreset::paste_all: return "paste_all";
    case ModelPreset::ising_t0: return "ising_t0";
    case ModelPreset::custom: return "custom";
  }
  return "?";
}

RateTable make_rate_spec(const ModelSpec& model, const EpochSchedule& sched,
                         std::size_t n, std::size_t grid_points) {
  RateTable t;
  t.d_min = sched.d(n);
  t.d_max = sched.d(n + 1);
  if (!(t.d_max > t.d_min)) {
    // Degenerate window (repeated threshold): nothing is ever active.
    t.d_max = t.d_min;
    t.grid = {t.d_min, t.d_min + 1.0};
    t.lam_l = t.lam_r = t.lam_a = {0.0, 0.0};
    return t;
  }

  const bool lattice = sched.integer_valued(n + 1);
  if (lattice) {
    // One knot per integer length in [d_min, d_max]; exact at the lengths the
    // lattice dynamics can visit.
    for (double x = t.d_min; x <= t.d_max; x += 1.0) t.grid.push_back(x);
    if (t.grid.back() < t.d_max) t.grid.push_back(t.d_max);
  } else {
    if (grid_points < 2) grid_points = 2;
    for (std::size_t i = 0; i < grid_points; ++i)
      t.grid.push_back(t.d_min + (t.d_max - t.d_min) * static_cast<double>(i) /
                                     static_cast<double>(grid_points - 1));
  }

  const std::size_t m = t.grid.size();
  t.lam_l.assign(m, 0.0);
  t.lam_r.assign(m, 0.0);
  t.lam_a.assign(m, 0.0);
  auto sample = [&](std::vector<double>& dst, const RateFn& fn) {
    for (std::size_t i = 0; i < m; ++i) dst[i] = fn(t.grid[i]);
  };
  switch (model.preset) {
    case ModelPreset::paste_all:
      t.lam_l.assign(m, 1.0);
      t.lam_r.assign(m, 1.0);
      break;
    case ModelPreset::ising_t0:
      t.lam_a.assign(m, 1.0);
      break;
    case ModelPreset::east:
      if (!model.user_left)
        throw std::invalid_argument(
            "east preset: a left-erasure rate function must be supplied");
      sample(t.lam_l, model.user_left);
      break;
    case ModelPreset::custom:
      if (model.user_left) sample(t.lam_l, model.user_left);
      if (model.user_right) sample(t.lam_r, model.user_right);
      if (model.user_both) sample(t.lam_a, model.user_both);
      break;
  }
  t.check();
  return t;
}

std::optional<Classification> classify_case(const RateTable& t, double tol) {
  if (t.d_max == t.d_min) {  // empty active window: trivially annihilation-free
    Classification c;
    c.interval_case = {UCase::case_i, 0.0};
    c.leftmost_gamma = 0.0;
    return c;
  }
  t.check();
  const double scale = std::max(1.0, t.max_total());
  const double eps = tol * scale;

  // Evaluate on the knots plus midpoints; piecewise-linear identities that
  // hold there hold everywhere on the window.
  std::vector<double> xs;
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    if (t.grid[i] >= t.d_min && t.grid[i] < t.d_max) xs.push_back(t.grid[i]);
    if (i + 1 < t.grid.size()) {
      const double mid = 0.5 * (t.grid[i] + t.grid[i + 1]);
      if (mid >= t.d_min && mid < t.d_max) xs.push_back(mid);
    }
  }
  if (xs.empty()) xs.push_back(t.d_min);

  double max_a = 0.0;
  for (double x : xs) max_a = std::max(max_a, t.both(x));
  if (max_a <= eps) {
    Classification c;
    c.interval_case = {UCase::case_i, 0.0};
    c.residual = max_a;
    // lambda_r == gamma * lambda_l?
    double num = 0.0, den = 0.0;
    for (double x : xs) {
      num += t.right(x) * t.left(x);
      den += t.left(x) * t.left(x);
    }
    if (den > 0.0) {
      const double g = std::max(0.0, num / den);
      double res = 0.0;
      for (double x : xs)
        res = std::max(res, std::fabs(t.right(x) - g * t.left(x)));
      if (res <= eps) c.leftmost_gamma = g;
    } else {
      double max_r = 0.0;
      for (double x : xs) max_r = std::max(max_r, t.right(x));
      if (max_r <= eps) c.leftmost_gamma = 0.0;  // all rates vanish
    }
    return c;
  }

  // CaseII: lambda_l + lambda_r == gamma * lambda_a, least-squares gamma >= 0.
  double num = 0.0, den = 0.0;
  for (double x : xs) {
    num += (t.left(x) + t.right(x)) * t.both(x);
    den += t.both(x) * t.both(x);
  }
  const double g = std::max(0.0, num / den);
  double res = 0.0;
  for (double x : xs)
    res = std::max(res, std::fabs(t.left(x) + t.right(x) - g * t.both(x)));
  if (res <= eps) {
    Classification c;
    c.interval_case = {UCase::case_ii, g};
    c.residual = res;
    double max_lr = 0.0;
    for (double x : xs)
      max_lr = std::max(max_lr, std::max(t.left(x), t.right(x)));
    c.leftmost_valid = max_lr <= eps;
    return c;
  }
  return std::nullopt;
}

}  // namespace hcp
