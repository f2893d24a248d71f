#pragma once

#include <vector>

namespace hcp {

// Dense truncated power series: coefficient of x^k at index k.  All routines
// work to the shorter of the stated order and the operand length and never
// use transform-based multiplication, so results are bit-reproducible.

/// Product truncated to max_order (inclusive).
std::vector<double> series_mul(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t max_order);

/// log of a series with constant term 1, via the l' = b'/b recurrence.
std::vector<double> series_log(const std::vector<double>& b);

/// exp of a series with constant term 0.
std::vector<double> series_exp(const std::vector<double>& a);

/// Quotient a/b with b[0] != 0, truncated to max_order.
std::vector<double> series_div(const std::vector<double>& a,
                               const std::vector<double>& b,
                               std::size_t max_order);

/// Composition f(g) with g[0] == 0, truncated to max_order (Horner form).
std::vector<double> series_compose(const std::vector<double>& f,
                                   const std::vector<double>& g,
                                   std::size_t max_order);

/// Compositional inverse r of f, where f[0] == 0 and f[1] == 1:
/// f(r(x)) = x through the stated order.  Order-by-order elimination.
std::vector<double> series_reversion(const std::vector<double>& f);

}  // namespace hcp
