#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hcp/summary.hpp"

namespace {

hcp::SGrid two_point() {
  hcp::SGrid g;
  g.s = {0.0, std::log(2.0)};
  return g;
}

}  // namespace

TEST_CASE("log grid pins its endpoints and spacing") {
  const auto g = hcp::SGrid::log_spaced(0.05, 10.0, 64);
  REQUIRE(g.s.size() == 64);
  CHECK(g.s.front() == 0.05);
  CHECK(g.s.back() == 10.0);
  const double ratio = std::pow(200.0, 1.0 / 63.0);
  for (std::size_t i = 0; i + 1 < g.s.size(); ++i) {
    CHECK(g.s[i + 1] > g.s[i]);
    CHECK(g.s[i + 1] / g.s[i] == doctest::Approx(ratio).epsilon(1e-12));
  }
  CHECK(hcp::SGrid::log_spaced() == g);
  CHECK_THROWS_AS(hcp::SGrid::log_spaced(0.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(hcp::SGrid::log_spaced(1.0, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(hcp::SGrid::log_spaced(0.1, 1.0, 1), std::invalid_argument);
}

TEST_CASE("summary transform of a point mass hits the exponential") {
  const auto g = two_point();
  hcp::EmpiricalSummary sum;
  sum.init(3, 8.0, g, true, true);
  sum.add(g, 1.0, 1);
  sum.add(g, 1.0, 1);
  sum.add(g, 2.0, 2);
  sum.add_replica();

  CHECK(sum.count == 3);
  CHECK(sum.replicas == 1);
  CHECK(sum.z_sum == 4.0);
  CHECK(sum.z_sq == 6.0);
  REQUIRE(sum.hist.size() == 2);
  CHECK(sum.hist.at(1) == 2);
  CHECK(sum.hist.at(2) == 1);

  const auto lap = hcp::empirical_laplace(sum, g);
  REQUIRE(lap.size() == 2);
  CHECK(lap[0].s == 0.0);
  CHECK(lap[0].value == 1.0);  // e^0 for every observation
  CHECK(lap[0].stderr_ == 0.0);
  // exp(-s) = 1/2 at s = ln 2: mean (1/2 + 1/2 + 1/4)/3, variance 1/72
  CHECK(lap[1].value == doctest::Approx(1.25 / 3.0).epsilon(1e-15));
  CHECK(lap[1].stderr_ == doctest::Approx(std::sqrt(1.0 / 216.0)).epsilon(1e-12));

  hcp::EmpiricalSummary one;
  one.init(3, 8.0, g, true, false);
  one.add(g, 1.0, 1);
  const auto lone = hcp::empirical_laplace(one, g);
  CHECK(lone[1].value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lone[1].stderr_ == 0.0);  // a single observation carries no spread

  hcp::EmpiricalSummary empty;
  empty.init(1, 1.0, g, true, false);
  const auto lempty = hcp::empirical_laplace(empty, g);
  CHECK(lempty[0].value == 0.0);
  CHECK(lempty[0].stderr_ == 0.0);

  hcp::SGrid other;
  other.s = {1.0};
  CHECK_THROWS_AS(hcp::empirical_laplace(sum, other), std::invalid_argument);
}

TEST_CASE("adaptive binning keys by offset over width") {
  const auto g = two_point();
  hcp::EmpiricalSummary sum;
  sum.init(2, 4.0, g, false, true);
  REQUIRE(sum.bin_width == 1e-2);
  sum.add(g, 1.0, 0);
  sum.add(g, 1.005, 0);
  sum.add(g, 1.02, 0);
  sum.add(g, 0.995, 0);
  REQUIRE(sum.hist.size() == 3);
  CHECK(sum.hist.at(-1) == 1);
  CHECK(sum.hist.at(0) == 2);
  CHECK(sum.hist.at(2) == 1);

  // lattice mode keys by the supplied integer gap, not the rescaled value
  hcp::EmpiricalSummary lat;
  lat.init(2, 4.0, g, true, true);
  lat.add(g, 3.7, 12);
  REQUIRE(lat.hist.size() == 1);
  CHECK(lat.hist.at(12) == 1);
}

TEST_CASE("merging summaries is exact on counts and additive on sums") {
  const auto g = two_point();
  hcp::EmpiricalSummary a, b, full;
  a.init(5, 16.0, g, true, true);
  b.init(5, 16.0, g, true, true);
  full.init(5, 16.0, g, true, true);
  const double obs_a[] = {1.0, 3.0};
  const double obs_b[] = {2.0, 2.0, 5.0};
  for (double z : obs_a) {
    a.add(g, z, static_cast<std::int64_t>(z));
    full.add(g, z, static_cast<std::int64_t>(z));
  }
  for (double z : obs_b) {
    b.add(g, z, static_cast<std::int64_t>(z));
    full.add(g, z, static_cast<std::int64_t>(z));
  }
  a.add_replica();
  a.add_replica();
  b.add_replica();

  const auto m = hcp::merge_summaries(a, b);
  CHECK(m.count == 5);
  CHECK(m.replicas == 3);
  CHECK(m.z_sum == doctest::Approx(full.z_sum).epsilon(1e-15));
  CHECK(m.z_sq == doctest::Approx(full.z_sq).epsilon(1e-15));
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    CHECK(m.lap_sum[i] == doctest::Approx(full.lap_sum[i]).epsilon(1e-12));
    CHECK(m.lap_sq[i] == doctest::Approx(full.lap_sq[i]).epsilon(1e-12));
  }
  CHECK(m.hist == full.hist);
  CHECK(hcp::empirical_laplace(m, g)[1].stderr_ > 0.0);

  // merge order cannot matter: pairwise float adds commute
  const auto m2 = hcp::merge_summaries(b, a);
  CHECK(m2.count == m.count);
  for (std::size_t i = 0; i < g.s.size(); ++i)
    CHECK(m2.lap_sum[i] == m.lap_sum[i]);

  hcp::EmpiricalSummary none;
  none.init(5, 16.0, g, true, false);
  const auto ma = hcp::merge_summaries(a, none);
  CHECK(ma.count == a.count);
  CHECK(ma.lap_sum[1] == a.lap_sum[1]);
  CHECK(ma.hist == a.hist);

  hcp::EmpiricalSummary wrong;
  wrong.init(6, 16.0, g, true, false);
  CHECK_THROWS_AS(hcp::merge_summaries(a, wrong), std::invalid_argument);
  wrong.init(5, 8.0, g, true, false);
  CHECK_THROWS_AS(hcp::merge_summaries(a, wrong), std::invalid_argument);
  hcp::SGrid g1;
  g1.s = {1.0};
  wrong.init(5, 16.0, g1, true, false);
  CHECK_THROWS_AS(hcp::merge_summaries(a, wrong), std::invalid_argument);
  wrong.init(5, 16.0, g, false, false);
  CHECK_THROWS_AS(hcp::merge_summaries(a, wrong), std::invalid_argument);

  hcp::EmpiricalSummary w1, w2;
  w1.init(5, 16.0, g, false, false);
  w2.init(5, 16.0, g, false, false);
  w2.bin_width = 2e-2;
  CHECK_THROWS_AS(hcp::merge_summaries(w1, w2), std::invalid_argument);
}
