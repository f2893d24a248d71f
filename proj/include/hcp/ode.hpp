#pragma once

#include <cstdint>
#include <vector>

#include "hcp/cases.hpp"
#include "hcp/grid_measure.hpp"
#include "hcp/rates.hpp"
#include "hcp/summary.hpp"

namespace hcp {

/// Deterministic epoch evolution of the gap law on the unit lattice:
///
///   d mu(x)/dt = -lam(x) mu(x)
///              + sum_{y+z=x} (lam_r(y) + lam_l(z)) mu(y) mu(z)
///              + sum_{u+y+z=x} lam_a(y) mu(u) mu(y) mu(z)
///
/// and, when tracked, the first-point law nu on x >= 0:
///
///   d nu(x)/dt = -[mu(lam_l + lam_a)] nu(x)
///              + sum_{u+y=x} nu(u) lam_l(y) mu(y)
///              + sum_{u+y+z=x} nu(u) lam_a(y) mu(y) mu(z).
///
/// Fixed-step RK4; mass pushed past x_max is dropped and shows up in
/// mass_defect.  Rates are read off the same table the event engine uses.
struct OdeOptions {
  double dt = 1e-3;
  double t_end = 10.0;
  std::int64_t x_max = 128;
  std::size_t store_every = 100;  // snapshot cadence in steps
  bool track_nu = false;
};

struct EpochTrajectory {
  std::int64_t x_max = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> mu;  // mu[k][x-1], x = 1..x_max
  std::vector<std::vector<double>> nu;  // nu[k][x],  x = 0..x_max (optional)
  double mass_defect = 0.0;             // 1 - final mu total

  GridMeasure final_mu() const;
  GridMeasure final_nu() const;
};

EpochTrajectory evolve_epoch_ode(const GridMeasure& mu0, const RateTable& rates,
                                 const OdeOptions& opt,
                                 const GridMeasure* nu0 = nullptr);

/// Conserved combinations along the trajectory, evaluated on the s-grid at
/// every stored state; the largest relative excursion from the initial value
/// is returned.  With G, H the transforms of mu (full and active-window):
///   case I interval:  (1 - G) e^{H}
///   case II interval: e^{-(g+2)/(g+1) H} (g+1+G)/(1-G)
/// and with L the transform of nu:
///   case I leftmost (lam_r = gamma lam_l):  L e^{(H(s)-H(0))/(1+gamma)}
///   case II leftmost:                       L / (sqrt(1-G^2) e^{H(0)}).
struct InvariantDrift {
  double interval = 0.0;
  double leftmost = 0.0;  // NaN-free: zero when nu is absent
};
InvariantDrift invariant_drift(const EpochTrajectory& traj,
                               const RateTable& rates, const CaseSpec& cs,
                               const SGrid& grid);

/// Per-(t, s) transforms of the stored states plus the relative drift of the
/// interval conserved combination, flattened t-major for CSV export.  L is 0
/// when nu was not tracked.
struct TrajectorySample {
  double t, s, G, H, L, drift;
};
std::vector<TrajectorySample> sample_trajectory(const EpochTrajectory& traj,
                                                const RateTable& rates,
                                                const CaseSpec& cs,
                                                const SGrid& grid);

/// Compare the final state against the predicted absorption endpoint derived
/// from the initial data alone.  h_end reports the surviving active mass
/// (the evolution is only finished when it is near zero).
struct EndpointCheck {
  double interval_sup = 0.0;
  double leftmost_sup = 0.0;
  double h_end = 0.0;
};
EndpointCheck endpoint_check(const EpochTrajectory& traj, const RateTable& rates,
                             const CaseSpec& cs, const SGrid& grid);

}  // namespace hcp
