#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hcp/grid_measure.hpp"

namespace hcp {

/// Kolmogorov-Smirnov distance between two lattice CDFs.  Positions are
/// matched by value (relative tolerance 1e-12), so both measures must be
/// expressed in the same units before comparing.
double ks_distance_lattice(const GridMeasure& a, const GridMeasure& b);

/// DKW confidence band for an empirical CDF of n samples at level alpha:
/// sqrt(log(2/alpha) / (2n)).
double dkw_band(std::uint64_t n, double alpha = 0.01);

/// Turn a histogram of integer-lattice observations into a probability
/// measure on the unit lattice.
GridMeasure empirical_lattice_measure(const std::map<std::int64_t, std::uint64_t>& hist,
                                      std::uint64_t count);

double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

/// Pearson statistic for observed counts against expected probabilities.
/// Cells with expected count below 1e-12 and zero observations are skipped.
double chi_square_stat(const std::vector<std::uint64_t>& obs,
                       const std::vector<double>& prob, std::uint64_t n);

/// Wilson-Hilferty approximation to the chi-square quantile.
double chi_square_quantile(double dof, double prob);

/// Inverse standard normal CDF (Acklam's rational approximation).
double inverse_normal_cdf(double p);

}  // namespace hcp
