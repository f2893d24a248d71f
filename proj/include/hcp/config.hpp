#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcp/configuration.hpp"
#include "hcp/rates.hpp"
#include "hcp/schedule.hpp"
#include "hcp/spp.hpp"
#include "hcp/summary.hpp"

namespace hcp {

/// Declarative experiment description, loaded from a JSON file.  Unknown keys
/// are rejected with their JSON-pointer path so typos cannot silently change
/// a run.  The seed may be overridden by the HCP_SEED environment variable,
/// and both by the --seed flag (flag > env > file).
struct LawConfig {
  std::string kind = "delta";  // delta | geometric | zeta_tail | custom
  double at = 1.0;             // delta site
  double p = 0.5;              // geometric success probability
  double alpha = 0.5;          // zeta_tail exponent, in [0, 1]
  std::int64_t x_max = 1 << 14;
  std::vector<double> sites;  // custom
  std::vector<double> mass;   // custom
};

struct ModelConfig {
  std::string preset = "ising_t0";  // ising_t0 | paste_all | east | custom
  std::optional<double> left_rate;  // east: user-supplied constant rate
  double lam_l = 0.0, lam_r = 0.0, lam_a = 0.0;  // custom: constant rates
};

struct ScheduleConfig {
  std::string kind = "linear";  // linear | east | geometric | explicit
  double a = 1.5;               // geometric ratio, in (1, 2]
  std::vector<double> d;        // explicit thresholds
};

struct SGridConfig {
  double lo = 0.05;
  double hi = 10.0;
  int points = 64;
};

struct OutputsConfig {
  bool interval_law = true;
  bool leftmost = false;
  bool ode_check = false;
  bool oracle = false;
  bool limit_compare = false;
};

struct OdeConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  std::int64_t x_max = 128;
};

struct TolerancesConfig {
  double interval_ks = 0.01;    // empirical vs oracle CDF
  double laplace_sup = 0.05;    // empirical vs oracle transform
  double ode_drift = 1e-5;      // conserved-combination relative drift
  double limit_sup = 0.05;      // oracle vs limit law at the last epoch
};

struct ExperimentConfig {
  ModelConfig model;
  LawConfig initial_law;
  ScheduleConfig schedule;
  std::string topology = "torus";  // torus | half_line
  std::uint64_t n_intervals = 10000;
  int epochs = 3;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  SGridConfig s_grid;
  OutputsConfig outputs;
  std::int64_t oracle_x_max = 1 << 14;
  OdeConfig ode;
  TolerancesConfig tolerances;
  std::string out_dir = "out";

  IntervalLaw build_law() const;
  EpochSchedule build_schedule() const;
  ModelSpec build_model() const;
  Topology build_topology() const;
  SGrid build_sgrid() const;
};

/// Parse + validate.  Throws std::runtime_error whose message lists every
/// problem found (one per line, each with its JSON path).
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<config>");

/// JSON echo of the effective config (for the report).
std::string config_to_json(const ExperimentConfig& c);

}  // namespace hcp
