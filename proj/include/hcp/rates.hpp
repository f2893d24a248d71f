#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hcp/cases.hpp"
#include "hcp/schedule.hpp"

namespace hcp {

/// One epoch's erasure rates as piecewise-linear tables over a shared length
/// grid.  A single table is handed to both the event engine and the ODE
/// integrator so the two consume bit-identical rate values.  Rates vanish
/// outside the active window [d_min, d_max).
struct RateTable {
  double d_min = 1.0;
  double d_max = 2.0;
  std::vector<double> grid;   // strictly increasing, spans [d_min, d_max]
  std::vector<double> lam_l;  // left-extreme erasure
  std::vector<double> lam_r;  // right-extreme erasure
  std::vector<double> lam_a;  // both-extreme erasure

  double left(double d) const { return eval(lam_l, d); }
  double right(double d) const { return eval(lam_r, d); }
  double both(double d) const { return eval(lam_a, d); }
  double total(double d) const { return left(d) + right(d) + both(d); }
  bool active(double d) const { return d >= d_min && d < d_max && total(d) > 0.0; }

  double max_total() const;
  void check() const;  // shape, positivity, finiteness

 private:
  double eval(const std::vector<double>& v, double d) const;
};

/// Model presets.  east requires a user left-rate (its reference form is
/// taken as input, not guessed); paste_all is unit left+right erasure;
/// ising_t0 is unit pair annihilation; custom takes all three.
enum class ModelPreset { east, paste_all, ising_t0, custom };

using RateFn = std::function<double(double)>;

struct ModelSpec {
  ModelPreset preset = ModelPreset::ising_t0;
  RateFn user_left, user_right, user_both;  // sampled onto the table grid
  std::string name() const;
};

/// Build the epoch-n table: active window [d(n), d(n+1)), sampled on integer
/// lengths when the schedule is integer-valued (grid_points otherwise).
RateTable make_rate_spec(const ModelSpec& model, const EpochSchedule& sched,
                         std::size_t n, std::size_t grid_points = 65);

/// Least-squares classification of a table into CaseI / CaseII(gamma).
/// Returns nullopt when neither identity holds within tol * max(1, max rate).
struct Classification {
  CaseSpec interval_case;
  double residual = 0.0;
  /// CaseI only: gamma with lambda_r == gamma * lambda_l, when consistent.
  std::optional<double> leftmost_gamma;
  /// CaseII only: leftmost theory needs lambda_l == lambda_r == 0.
  bool leftmost_valid = false;
};
std::optional<Classification> classify_case(const RateTable& t,
                                            double tol = 1e-12);

}  // namespace hcp
