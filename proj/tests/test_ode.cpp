#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcp/cases.hpp"
#include "hcp/grid_measure.hpp"
#include "hcp/ode.hpp"
#include "hcp/rates.hpp"
#include "hcp/schedule.hpp"
#include "hcp/spp.hpp"
#include "hcp/summary.hpp"

using hcp::CaseSpec;
using hcp::GridMeasure;
using hcp::OdeOptions;
using hcp::UCase;

namespace {

hcp::RateTable table_for(hcp::ModelPreset preset, std::size_t n) {
  hcp::ModelSpec m;
  m.preset = preset;
  return hcp::make_rate_spec(m, hcp::EpochSchedule::linear(), n);
}

double total_of(const std::vector<double>& v) {
  double t = 0.0;
  for (double x : v) t += x;
  return t;
}

}  // namespace

TEST_CASE("unit-gap depletion follows the exact exponential") {
  // pure annihilation from a unit point mass: the only loss channel at x = 1
  // is the domain's own clock, so mu_t(1) = exp(-t); gains feed x = 3.
  const auto mu0 = hcp::interval_law_delta(1);
  OdeOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 5.0;
  opt.x_max = 64;
  opt.store_every = 500;
  const auto traj =
      hcp::evolve_epoch_ode(mu0.grid, table_for(hcp::ModelPreset::ising_t0, 1), opt);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    CHECK(traj.mu[k][0] == doctest::Approx(std::exp(-t)).epsilon(1e-10));
  }
  // nothing can reach even sites from a unit start under pair annihilation
  const auto fin = traj.final_mu();
  CHECK(fin.mass[1] == 0.0);
  CHECK(fin.mass[3] == 0.0);
}

TEST_CASE("total mass is conserved up to the truncation defect") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 48);
  for (auto preset : {hcp::ModelPreset::ising_t0, hcp::ModelPreset::paste_all}) {
    OdeOptions opt;
    opt.dt = 2e-3;
    opt.t_end = 8.0;
    opt.x_max = 256;
    opt.store_every = 1000;
    const auto traj = hcp::evolve_epoch_ode(mu0.grid, table_for(preset, 1), opt);
    // the law starts 2^-48 short of one; integration must not lose more than
    // roundoff and the (here unreachable) convolution overflow past x_max
    CHECK(total_of(traj.mu.back()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(traj.mass_defect < 1e-12);
    CHECK(traj.mass_defect >= 0.0);
  }
}

TEST_CASE("zero rates freeze the law exactly") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 32);
  hcp::ModelSpec m;
  m.preset = hcp::ModelPreset::custom;
  const auto t = hcp::make_rate_spec(m, hcp::EpochSchedule::linear(), 1);
  OdeOptions opt;
  opt.dt = 1e-2;
  opt.t_end = 1.0;
  opt.x_max = 64;
  const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt);
  for (std::size_t j = 0; j < mu0.grid.size(); ++j)
    CHECK(traj.mu.back()[j] == mu0.grid.mass[j]);
  CHECK(traj.mass_defect == doctest::Approx(0.0));
}

TEST_CASE("active mass decreases along the trajectory") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 48);
  const auto t = table_for(hcp::ModelPreset::paste_all, 1);
  OdeOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 6.0;
  opt.x_max = 128;
  opt.store_every = 250;
  const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt);
  double prev = 1e9;
  for (const auto& state : traj.mu) {
    const double active = state[0];  // only x = 1 is active in epoch 1
    CHECK(active <= prev + 1e-15);
    prev = active;
  }
  CHECK(prev < 5e-3);  // nearly absorbed by t = 6
}

TEST_CASE("conserved combinations drift below 1e-6 at the reference step") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 48);
  const auto grid = hcp::SGrid::log_spaced(0.1, 5.0, 16);
  OdeOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 10.0;
  opt.x_max = 192;
  opt.store_every = 1000;
  opt.track_nu = true;
  GridMeasure nu0;  // pinned start: first point at the origin
  nu0.first = 0;
  nu0.mass = {1.0};

  struct Scenario {
    hcp::ModelPreset preset;
    CaseSpec cs;
  };
  const Scenario scen[] = {
      {hcp::ModelPreset::paste_all, {UCase::case_i, 1.0}},
      {hcp::ModelPreset::ising_t0, {UCase::case_ii, 0.0}},
  };
  for (const auto& sc : scen) {
    const auto t = table_for(sc.preset, 1);
    const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt, &nu0);
    const auto drift = hcp::invariant_drift(traj, t, sc.cs, grid);
    CHECK(drift.interval < 1e-6);
    CHECK(drift.leftmost < 1e-6);
  }
}

TEST_CASE("mixed-channel rates conserve the mixed-case combination") {
  // lambda_l = lambda_r = 1/2, lambda_a = 1: case II with gamma = 1
  hcp::ModelSpec m;
  m.preset = hcp::ModelPreset::custom;
  m.user_left = [](double) { return 0.5; };
  m.user_right = [](double) { return 0.5; };
  m.user_both = [](double) { return 1.0; };
  const auto t = hcp::make_rate_spec(m, hcp::EpochSchedule::linear(), 1);
  const auto mu0 = hcp::interval_law_geometric(0.5, 48);
  const auto grid = hcp::SGrid::log_spaced(0.1, 5.0, 16);
  OdeOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 10.0;
  opt.x_max = 192;
  const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt);
  const auto drift = hcp::invariant_drift(traj, t, {UCase::case_ii, 1.0}, grid);
  CHECK(drift.interval < 1e-6);
}

TEST_CASE("drift scales as the fourth power of the step") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 32);
  const auto t = table_for(hcp::ModelPreset::ising_t0, 1);
  const auto grid = hcp::SGrid::log_spaced(0.2, 2.0, 8);
  auto run = [&](double dt) {
    OdeOptions opt;
    opt.dt = dt;
    opt.t_end = 4.0;
    opt.x_max = 96;
    opt.store_every = static_cast<std::size_t>(std::llround(0.5 / dt));
    const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt);
    return hcp::invariant_drift(traj, t, {UCase::case_ii, 0.0}, grid).interval;
  };
  const double coarse = run(4e-2);
  const double fine = run(2e-2);
  CHECK(coarse > 0.0);
  const double ratio = coarse / fine;
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("endpoint prediction matches the absorbed state") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 48);
  const auto grid = hcp::SGrid::log_spaced(0.1, 5.0, 16);
  OdeOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 20.0;
  opt.x_max = 192;
  opt.track_nu = true;
  GridMeasure nu0;
  nu0.first = 0;
  nu0.mass = {1.0};

  struct Scenario {
    hcp::ModelPreset preset;
    CaseSpec cs;
  };
  const Scenario scen[] = {
      {hcp::ModelPreset::paste_all, {UCase::case_i, 1.0}},
      {hcp::ModelPreset::ising_t0, {UCase::case_ii, 0.0}},
  };
  for (const auto& sc : scen) {
    const auto t = table_for(sc.preset, 1);
    const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt, &nu0);
    const auto ep = hcp::endpoint_check(traj, t, sc.cs, grid);
    // residual active mass bounds how far from absorption we stopped
    CHECK(ep.h_end < 1e-4);
    CHECK(ep.interval_sup < 1e-4);
    CHECK(ep.leftmost_sup < 1e-4);
  }
}

TEST_CASE("trajectory samples expose monotone active mass and bounded drift") {
  const auto mu0 = hcp::interval_law_geometric(0.5, 32);
  const auto t = table_for(hcp::ModelPreset::ising_t0, 1);
  const auto grid = hcp::SGrid::log_spaced(0.5, 2.0, 4);
  OdeOptions opt;
  opt.dt = 1e-2;
  opt.t_end = 3.0;
  opt.x_max = 64;
  opt.store_every = 50;
  const auto traj = hcp::evolve_epoch_ode(mu0.grid, t, opt);
  const auto rows = hcp::sample_trajectory(traj, t, {UCase::case_ii, 0.0}, grid);
  REQUIRE(rows.size() == traj.times.size() * grid.s.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].G > 0.0);
    CHECK(rows[i].G < 1.0);
    CHECK(rows[i].H >= 0.0);
    CHECK(std::abs(rows[i].drift) < 1e-5);
    // t-major flattening
    if (i >= grid.s.size())
      CHECK(rows[i].t >= rows[i - grid.s.size()].t);
  }
}

TEST_CASE("negative input mass is rejected") {
  GridMeasure bad;
  bad.first = 1;
  bad.mass = {0.5, -0.1, 0.6};
  const auto t = table_for(hcp::ModelPreset::ising_t0, 1);
  OdeOptions opt;
  opt.dt = 1e-2;
  opt.t_end = 0.1;
  opt.x_max = 16;
  CHECK_THROWS(hcp::evolve_epoch_ode(bad, t, opt));
}
