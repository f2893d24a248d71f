#pragma once

#include <cstdint>
#include <vector>

#include "hcp/cases.hpp"
#include "hcp/grid_measure.hpp"
#include "hcp/schedule.hpp"

namespace hcp {

/// Taylor coefficients of the linearizing transform F (closed form) and of
/// its inverse R (by power-series reversion), indices 1..K at [1..K].
/// composition_residual is the largest coefficient of F(R(x)) - x, a
/// self-check of the reversion.
struct SeriesCoefficients {
  CaseSpec cs;
  std::size_t K = 0;
  std::vector<double> f, r;  // [0] unused
  double composition_residual = 0.0;
};

/// Case I: f_k = 1/k.  Case II: f_k = (g+1)/(g+2) * (1/k) * (1 + (-1)^(k+1) (g+1)^(-k)).
std::vector<double> f_coefficients(const CaseSpec& cs, std::size_t K);
SeriesCoefficients r_coefficients(const CaseSpec& cs, std::size_t K);

/// The epoch-linearizing base measure m on [1, inf): the measure whose
/// Laplace transform is F(g(s)), equivalently sum_k f_k mu^(*k).  Computed by
/// the O(N^2) power-series log recurrences on the unit lattice (mu must have
/// step 1 and integer support >= 1); truncated at site x_max with the
/// dropped-series remainder uncontrolled, so callers choose x_max large
/// enough for their transform arguments.
GridMeasure m_measure(const GridMeasure& mu, const CaseSpec& cs,
                      std::int64_t x_max);

/// Prefix mass m([1, z)); the accumulated "active mass" consumed through the
/// scale z.  Grows like kappa * log z.
double log_sum_h(const GridMeasure& m, double z);

/// Exact law of the rescaled gap Z(n) = gap / d(n) at the start of epoch n:
/// restrict m to [d(n), inf), rescale to [1, inf), and apply the inverse
/// transform R as a power series (equivalently sum_k r_k of convolution
/// powers).  Result lives on the (1/d(n))-lattice from z = 1 up to
/// z_max_units/d(n); clamped negative round-off and the mass beyond the cut
/// are reported through the struct.
struct EpochLaw {
  GridMeasure law;       // probability on [1, z_max]
  double deficit = 0.0;  // 1 - computed mass (law tail beyond the cut)
  double min_mass = 0.0; // most negative pre-clamp coefficient
};
EpochLaw epoch_interval_law(const GridMeasure& m, const CaseSpec& cs,
                            const EpochSchedule& sched, std::size_t n,
                            std::int64_t z_max_units = -1);

/// Laplace transform of Z(n) straight from m: R(sum_{x >= d(n)} m_x e^{-s x/d(n)}).
double epoch_transform(const GridMeasure& m, const CaseSpec& cs,
                       const EpochSchedule& sched, std::size_t n, double s);

/// Active-window piece h_n(s) = sum_{d(n) <= x < d(n+1)} m_x e^{-s x/d(n)}.
double epoch_active_transform(const GridMeasure& m, const EpochSchedule& sched,
                              std::size_t n, double s);

/// One step of the pointwise transform recursion: from samples of g_n and h_n
/// at the arguments s, produce g_{n+1} at the rescaled arguments
/// (d(n+1)/d(n)) s via R(F(g_n(s)) - h_n(s)); the exponent s x / d(n) is
/// invariant, so chains targeting g_N(S) start from g_1 at S d(1)/d(N).
std::vector<double> recursion_step_laplace(const CaseSpec& cs,
                                           const std::vector<double>& g_n,
                                           const std::vector<double>& h_n);

/// Laplace transform of the rescaled leftmost point Y(n) = x0 / d(n) for the
/// origin-pinned start (whose epoch-1 transform is identically 1).
///
/// No-annihilation regime with lambda_r = gamma lambda_l:
///   exp{ -(1/(1+gamma)) sum_{1 <= x < d(n)} (1 - e^{-s x / d(n)}) m_x }.
/// Pure-annihilation regime:
///   sqrt((1 - g_n(s)^2) / (1 - g_1(s/d(n))^2)) * exp{-m([1, d(n)))},
/// with g_1 the initial-gap transform and g_n from epoch_transform.
double leftmost_laplace(const GridMeasure& mu, const GridMeasure& m,
                        const CaseSpec& cs, const EpochSchedule& sched,
                        std::size_t n, double s);

/// Tail-index estimate c0 = lim_{s->0} -s g'(s) / (1 - g(s)) from the lattice
/// law: evaluated at 8 dyadic points s = 2^-3..2^-10 and accelerated by two
/// Aitken delta-squared sweeps (the correction exponent is law-dependent).
struct C0Estimate {
  double value = 1.0;
  double residual = 0.0;  // spread of the last sweep, a convergence indicator
  bool converged = true;
};
C0Estimate c0_estimate(const GridMeasure& mu);

}  // namespace hcp
