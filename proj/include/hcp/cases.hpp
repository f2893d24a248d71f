#pragma once

#include <cmath>
#include <stdexcept>

namespace hcp {

/// The two rate regimes with solvable one-epoch laws.  CaseI: no pair
/// annihilation (lambda_a == 0).  CaseII: lambda_l + lambda_r == gamma *
/// lambda_a for a constant gamma >= 0.
enum class UCase { case_i, case_ii };

struct CaseSpec {
  UCase kind = UCase::case_i;
  double gamma = 0.0;  // meaningful for case_ii; for case_i leftmost laws it
                       // is the rate ratio lambda_r / lambda_l instead.
};

/// Linearizing transform F for the epoch evolution.  Case I: -log(1-x).
/// Case II: (g+1)/(g+2) * log((1 + x/(g+1)) / (1-x)).  Domain x < 1.
inline double lin_F(const CaseSpec& c, double x) {
  if (x >= 1.0) throw std::domain_error("lin_F: argument must be < 1");
  if (c.kind == UCase::case_i) return -std::log1p(-x);
  const double g = c.gamma;
  return (g + 1.0) / (g + 2.0) * (std::log1p(x / (g + 1.0)) - std::log1p(-x));
}

/// Inverse transform R = F^{-1}.  Case I: 1 - exp(-x).  Case II:
/// (exp(bx) - 1) / (exp(bx) + 1/(g+1)) with b = (g+2)/(g+1); at gamma = 0
/// this is tanh(x).  Entire on the real line in both cases.
inline double lin_R(const CaseSpec& c, double x) {
  if (c.kind == UCase::case_i) return -std::expm1(-x);
  const double g = c.gamma;
  const double b = (g + 2.0) / (g + 1.0);
  if (x >= 0.0) {  // overflow-safe form for the main branch
    const double t = std::exp(-b * x);
    return (1.0 - t) / (1.0 + t / (g + 1.0));
  }
  const double em = std::expm1(b * x);
  return em / (em + 1.0 + 1.0 / (g + 1.0));
}

}  // namespace hcp
