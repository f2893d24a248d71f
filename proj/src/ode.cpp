#include "hcp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

namespace {

struct LatticeRates {
  std::vector<double> lam_l, lam_r, lam_a, lam_tot;  // index x-1, x = 1..X
  std::int64_t lo = 0, hi = -1;                      // active site span
};

LatticeRates tabulate(const RateTable& rt, std::int64_t x_max) {
  LatticeRates lr;
  lr.lam_l.assign(static_cast<std::size_t>(x_max), 0.0);
  lr.lam_r.assign(static_cast<std::size_t>(x_max), 0.0);
  lr.lam_a.assign(static_cast<std::size_t>(x_max), 0.0);
  lr.lam_tot.assign(static_cast<std::size_t>(x_max), 0.0);
  lr.lo = x_max + 1;
  lr.hi = 0;
  for (std::int64_t x = 1; x <= x_max; ++x) {
    const double l = rt.left(static_cast<double>(x));
    const double r = rt.right(static_cast<double>(x));
    const double a = rt.both(static_cast<double>(x));
    const std::size_t i = static_cast<std::size_t>(x - 1);
    lr.lam_l[i] = l;
    lr.lam_r[i] = r;
    lr.lam_a[i] = a;
    lr.lam_tot[i] = l + r + a;
    if (lr.lam_tot[i] > 0.0) {
      lr.lo = std::min(lr.lo, x);
      lr.hi = std::max(lr.hi, x);
    }
  }
  return lr;
}

// out[x-1] += sum_{y+z=x} a[y-1] b[z-1]; sites past the lattice end dropped.
void conv_add(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t slot = i + j + 1;  // site (i+1)+(j+1), slot site-1
      if (slot >= n) break;
      out[slot] += ai * b[j];
    }
  }
}

// Same but `a` lives on 0..X (nu layout): out[x] += sum a[u] b[y], u+y=x.
void conv_add_shift(const std::vector<double>& a, const std::vector<double>& b,
                    std::vector<double>& out) {
  const std::size_t n = out.size();  // slots 0..X
  for (std::size_t u = 0; u < a.size(); ++u) {
    const double au = a[u];
    if (au == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t x = u + j + 1;  // site u + (j+1)
      if (x >= n) break;
      out[x] += au * b[j];
    }
  }
}

struct Deriv {
  const LatticeRates* lr = nullptr;
  bool with_nu = false;
  // scratch
  std::vector<double> wl, wr, wa, pair_wa;

  void operator()(const std::vector<double>& mu, const std::vector<double>& nu,
                  std::vector<double>& dmu, std::vector<double>& dnu) {
    const std::size_t n = mu.size();
    dmu.assign(n, 0.0);
    wl.assign(n, 0.0);
    wr.assign(n, 0.0);
    wa.assign(n, 0.0);
    double any_a = 0.0;
    for (std::int64_t x = lr->lo; x <= lr->hi && x >= 1; ++x) {
      const std::size_t i = static_cast<std::size_t>(x - 1);
      wl[i] = lr->lam_l[i] * mu[i];
      wr[i] = lr->lam_r[i] * mu[i];
      wa[i] = lr->lam_a[i] * mu[i];
      any_a += wa[i];
      dmu[i] -= lr->lam_tot[i] * mu[i];
    }
    conv_add(wr, mu, dmu);
    conv_add(mu, wl, dmu);
    if (any_a > 0.0) {
      pair_wa.assign(n, 0.0);
      conv_add(wa, mu, pair_wa);
      conv_add(pair_wa, mu, dmu);
    }
    if (with_nu) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += wl[i] + wa[i];
      dnu.assign(nu.size(), 0.0);
      for (std::size_t i = 0; i < nu.size(); ++i) dnu[i] -= c * nu[i];
      conv_add_shift(nu, wl, dnu);
      if (any_a > 0.0) conv_add_shift(nu, pair_wa, dnu);
    }
  }
};

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double lap(const std::vector<double>& v, std::int64_t first, double s) {
  // summed smallest weight first for stable accumulation
  double acc = 0.0;
  for (std::size_t i = v.size(); i-- > 0;)
    acc += v[i] * std::exp(-s * static_cast<double>(first + static_cast<std::int64_t>(i)));
  return acc;
}

double lap_active(const std::vector<double>& v, const LatticeRates& lr, double s) {
  double acc = 0.0;
  for (std::int64_t x = lr.hi; x >= lr.lo && x >= 1; --x) {
    const std::size_t i = static_cast<std::size_t>(x - 1);
    if (lr.lam_tot[i] > 0.0) acc += v[i] * std::exp(-s * static_cast<double>(x));
  }
  return acc;
}

}  // namespace

GridMeasure EpochTrajectory::final_mu() const {
  GridMeasure g;
  g.step = 1.0;
  g.first = 1;
  g.mass = mu.empty() ? std::vector<double>{} : mu.back();
  g.tail_mass = 0.0;
  return g;
}

GridMeasure EpochTrajectory::final_nu() const {
  GridMeasure g;
  g.step = 1.0;
  g.first = 0;
  g.mass = nu.empty() ? std::vector<double>{} : nu.back();
  g.tail_mass = 0.0;
  return g;
}

EpochTrajectory evolve_epoch_ode(const GridMeasure& mu0, const RateTable& rates,
                                 const OdeOptions& opt, const GridMeasure* nu0) {
  if (!mu0.integer_lattice() || mu0.first < 1)
    throw std::invalid_argument("ode: mu0 must live on the unit lattice, sites >= 1");
  if (opt.dt <= 0.0 || opt.t_end < 0.0 || opt.x_max < 1)
    throw std::invalid_argument("ode: bad options");

  const std::int64_t X = opt.x_max;
  EpochTrajectory traj;
  traj.x_max = X;

  std::vector<double> mu(static_cast<std::size_t>(X), 0.0);
  for (std::size_t i = 0; i < mu0.mass.size(); ++i) {
    const std::int64_t x = mu0.first + static_cast<std::int64_t>(i);
    if (x >= 1 && x <= X) mu[static_cast<std::size_t>(x - 1)] += mu0.mass[i];
  }
  std::vector<double> nu;
  const bool with_nu = (nu0 != nullptr) || opt.track_nu;
  if (with_nu) {
    nu.assign(static_cast<std::size_t>(X + 1), 0.0);
    if (nu0 != nullptr) {
      if (!nu0->integer_lattice() || nu0->first < 0)
        throw std::invalid_argument("ode: nu0 must live on the unit lattice, sites >= 0");
      for (std::size_t i = 0; i < nu0->mass.size(); ++i) {
        const std::int64_t x = nu0->first + static_cast<std::int64_t>(i);
        if (x >= 0 && x <= X) nu[static_cast<std::size_t>(x)] += nu0->mass[i];
      }
    } else {
      nu[0] = 1.0;  // pinned start
    }
  }

  Deriv deriv;
  LatticeRates lr = tabulate(rates, X);
  deriv.lr = &lr;
  deriv.with_nu = with_nu;

  const std::size_t nsteps =
      static_cast<std::size_t>(std::llround(opt.t_end / opt.dt));
  const double dt = nsteps > 0 ? opt.t_end / static_cast<double>(nsteps) : opt.dt;

  std::vector<double> k1m, k2m, k3m, k4m, k1n, k2n, k3n, k4n, tm, tn;
  auto store = [&](double t) {
    for (double v : mu)
      if (v < -1e-8)
        throw std::runtime_error("ode: negative mass, step size too large");
    traj.times.push_back(t);
    traj.mu.push_back(mu);
    if (with_nu) traj.nu.push_back(nu);
  };
  store(0.0);

  for (std::size_t step = 0; step < nsteps; ++step) {
    deriv(mu, nu, k1m, k1n);
    tm = mu;
    axpy(tm, 0.5 * dt, k1m);
    if (with_nu) {
      tn = nu;
      axpy(tn, 0.5 * dt, k1n);
    }
    deriv(tm, tn, k2m, k2n);
    tm = mu;
    axpy(tm, 0.5 * dt, k2m);
    if (with_nu) {
      tn = nu;
      axpy(tn, 0.5 * dt, k2n);
    }
    deriv(tm, tn, k3m, k3n);
    tm = mu;
    axpy(tm, dt, k3m);
    if (with_nu) {
      tn = nu;
      axpy(tn, dt, k3n);
    }
    deriv(tm, tn, k4m, k4n);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      mu[i] += w * (k1m[i] + 2.0 * k2m[i] + 2.0 * k3m[i] + k4m[i]);
    if (with_nu)
      for (std::size_t i = 0; i < nu.size(); ++i)
        nu[i] += w * (k1n[i] + 2.0 * k2n[i] + 2.0 * k3n[i] + k4n[i]);
    const double t = dt * static_cast<double>(step + 1);
    if ((step + 1) % opt.store_every == 0 || step + 1 == nsteps) store(t);
  }

  double tot = 0.0;
  for (double v : mu) tot += v;
  traj.mass_defect = 1.0 - tot;
  return traj;
}

InvariantDrift invariant_drift(const EpochTrajectory& traj,
                               const RateTable& rates, const CaseSpec& cs,
                               const SGrid& grid) {
  InvariantDrift out;
  if (traj.mu.empty()) return out;
  const LatticeRates lr = tabulate(rates, traj.x_max);
  const bool with_nu = !traj.nu.empty();
  const double g = cs.gamma;

  for (double s : grid.s) {
    double c0_int = 0.0, c0_left = 0.0;
    for (std::size_t k = 0; k < traj.mu.size(); ++k) {
      const double G = lap(traj.mu[k], 1, s);
      if (G >= 1.0)
        throw std::invalid_argument("invariant_drift: G(s) reached 1, s too small");
      const double H = lap_active(traj.mu[k], lr, s);
      double ci;
      if (cs.kind == UCase::case_i) {
        ci = (1.0 - G) * std::exp(H);
      } else {
        const double b = (g + 2.0) / (g + 1.0);
        ci = std::exp(-b * H) * (g + 1.0 + G) / (1.0 - G);
      }
      if (k == 0) {
        c0_int = ci;
      } else {
        const double ref = std::max(std::abs(c0_int), 1e-300);
        out.interval = std::max(out.interval, std::abs(ci - c0_int) / ref);
      }
      if (with_nu) {
        const double L = lap(traj.nu[k], 0, s);
        const double H0 = lap_active(traj.mu[k], lr, 0.0);
        double cl;
        if (cs.kind == UCase::case_i) {
          cl = L * std::exp((H - H0) / (1.0 + g));
        } else {
          cl = L / (std::sqrt(std::max(1.0 - G * G, 1e-300)) * std::exp(H0));
        }
        if (k == 0) {
          c0_left = cl;
        } else {
          const double ref = std::max(std::abs(c0_left), 1e-300);
          out.leftmost = std::max(out.leftmost, std::abs(cl - c0_left) / ref);
        }
      }
    }
  }
  return out;
}

std::vector<TrajectorySample> sample_trajectory(const EpochTrajectory& traj,
                                                const RateTable& rates,
                                                const CaseSpec& cs,
                                                const SGrid& grid) {
  std::vector<TrajectorySample> out;
  if (traj.mu.empty()) return out;
  const LatticeRates lr = tabulate(rates, traj.x_max);
  const bool with_nu = !traj.nu.empty();
  const double g = cs.gamma;
  out.reserve(traj.mu.size() * grid.s.size());
  auto conserved = [&](double G, double H) {
    if (cs.kind == UCase::case_i) return (1.0 - G) * std::exp(H);
    const double b = (g + 2.0) / (g + 1.0);
    return std::exp(-b * H) * (g + 1.0 + G) / (1.0 - G);
  };
  for (std::size_t k = 0; k < traj.mu.size(); ++k) {
    for (std::size_t si = 0; si < grid.s.size(); ++si) {
      const double s = grid.s[si];
      TrajectorySample p{};
      p.t = traj.times[k];
      p.s = s;
      p.G = lap(traj.mu[k], 1, s);
      p.H = lap_active(traj.mu[k], lr, s);
      p.L = with_nu ? lap(traj.nu[k], 0, s) : 0.0;
      const double c0 = conserved(lap(traj.mu[0], 1, s), lap_active(traj.mu[0], lr, s));
      p.drift = std::abs(conserved(p.G, p.H) - c0) / std::max(std::abs(c0), 1e-300);
      out.push_back(p);
    }
  }
  return out;
}

EndpointCheck endpoint_check(const EpochTrajectory& traj, const RateTable& rates,
                             const CaseSpec& cs, const SGrid& grid) {
  EndpointCheck out;
  if (traj.mu.size() < 2) return out;
  const LatticeRates lr = tabulate(rates, traj.x_max);
  const auto& m0 = traj.mu.front();
  const auto& me = traj.mu.back();
  out.h_end = lap_active(me, lr, 0.0);
  const double g = cs.gamma;
  const bool with_nu = !traj.nu.empty();
  const double H00 = lap_active(m0, lr, 0.0);

  for (double s : grid.s) {
    const double G0 = lap(m0, 1, s);
    const double H0 = lap_active(m0, lr, s);
    const double Ge = lap(me, 1, s);
    double pred;
    if (cs.kind == UCase::case_i) {
      pred = 1.0 - (1.0 - G0) * std::exp(H0);
    } else {
      const double b = (g + 2.0) / (g + 1.0);
      const double K = std::exp(-b * H0) * (g + 1.0 + G0) / (1.0 - G0);
      pred = (K - g - 1.0) / (K + 1.0);
    }
    out.interval_sup = std::max(out.interval_sup, std::abs(Ge - pred));
    if (with_nu) {
      const double L0 = lap(traj.nu.front(), 0, s);
      const double Le = lap(traj.nu.back(), 0, s);
      double lpred;
      if (cs.kind == UCase::case_i) {
        lpred = L0 * std::exp((H0 - H00) / (1.0 + g));
      } else {
        const double num = std::max(1.0 - Ge * Ge, 0.0);
        const double den = std::max(1.0 - G0 * G0, 1e-300);
        lpred = L0 * std::sqrt(num / den) * std::exp(-H00);
      }
      out.leftmost_sup = std::max(out.leftmost_sup, std::abs(Le - lpred));
    }
  }
  return out;
}

}  // namespace hcp
