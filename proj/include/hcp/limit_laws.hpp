#pragma once

#include "hcp/cases.hpp"

namespace hcp {

inline constexpr double EULER_GAMMA = 0.5772156649015328606;

/// Exponential integral E1(s) = int_s^inf exp(-t)/t dt, s > 0.
/// Power series below s = 1, modified-Lentz continued fraction above;
/// relative accuracy about 1e-14 over (0, 700).
double exp_integral_e1(double s);

/// Parameters of the universal epoch-scaling laws: the case, its gamma, the
/// initial-law tail constant c0, and the derived slope kappa used inside R.
struct LimitLawParams {
  CaseSpec cs;
  double c0 = 1.0;
  double kappa = 1.0;
};

/// kappa = c0 in case I and (gamma+1)/(gamma+2) * c0 in case II.
LimitLawParams make_limit_params(const CaseSpec& cs, double c0);

/// Laplace transform of the limiting rescaled-gap law: R(kappa * E1(s)).
/// c0 = 0 degenerates to the zero transform.
double limit_interval_laplace(const LimitLawParams& p, double s);

/// Limiting rescaled-leftmost transform, no-annihilation regime with
/// lambda_r = gamma * lambda_l:
///   exp{ -c0/(1+gamma) * (EULER_GAMMA + log s + E1(s)) },  s = 0 maps to 1.
double limit_leftmost_laplace_case_i(double c0, double gamma, double s);

/// Limiting rescaled-leftmost transform, pure-annihilation regime
/// (finite-mean initial law):
///   exp(-EULER_GAMMA/2)/2 * sqrt((1 - tanh^2(E1(s)/2)) / s),  s = 0 maps to 1.
double limit_leftmost_laplace_case_ii(double s);

}  // namespace hcp
