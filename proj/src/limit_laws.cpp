#include "hcp/limit_laws.hpp"

#include <cmath>
#include <stdexcept>

namespace hcp {

double exp_integral_e1(double s) {
  if (!(s > 0.0)) throw std::domain_error("exp_integral_e1: need s > 0");
  if (s <= 1.0) {
    // E1(s) = -EULER - log s + sum_{n>=1} (-1)^{n+1} s^n / (n n!)
    double sum = 0.0;
    double term = 1.0;  // s^n / n! carried incrementally
    for (int n = 1; n <= 40; ++n) {
      term *= -s / n;
      sum -= term / n;
    }
    return -EULER_GAMMA - std::log(s) + sum;
  }
  // Continued fraction e^{-s} * 1/(s+1- 1/(s+3- 4/(s+5- ...))), modified Lentz.
  const double tiny = 1e-300;
  double b = s + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 60; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-s);
}

LimitLawParams make_limit_params(const CaseSpec& cs, double c0) {
  if (!(c0 >= 0.0)) throw std::domain_error("make_limit_params: need c0 >= 0");
  LimitLawParams p;
  p.cs = cs;
  p.c0 = c0;
  p.kappa = cs.kind == UCase::case_i
                ? c0
                : (cs.gamma + 1.0) / (cs.gamma + 2.0) * c0;
  return p;
}

double limit_interval_laplace(const LimitLawParams& p, double s) {
  if (p.kappa == 0.0) return 0.0;
  return lin_R(p.cs, p.kappa * exp_integral_e1(s));
}

double limit_leftmost_laplace_case_i(double c0, double gamma, double s) {
  if (s < 0.0) throw std::domain_error("limit_leftmost_laplace: need s >= 0");
  if (s == 0.0) return 1.0;
  // EULER + log s + E1(s) = int_0^s (1 - e^{-u})/u du, entire and >= 0.
  const double ein = EULER_GAMMA + std::log(s) + exp_integral_e1(s);
  return std::exp(-c0 / (1.0 + gamma) * ein);
}

double limit_leftmost_laplace_case_ii(double s) {
  if (s < 0.0) throw std::domain_error("limit_leftmost_laplace: need s >= 0");
  if (s == 0.0) return 1.0;
  const double t = std::tanh(0.5 * exp_integral_e1(s));
  return 0.5 * std::exp(-0.5 * EULER_GAMMA) * std::sqrt((1.0 - t * t) / s);
}

}  // namespace hcp
