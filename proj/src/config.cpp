#include "hcp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hcp {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed,
                std::vector<std::string>& errs) {
  if (!obj.is_object()) {
    errs.push_back(path + ": expected an object");
    return;
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      errs.push_back(path + "/" + it.key() + ": unknown key");
  }
}

template <class T>
void take(const json& obj, const std::string& path, const char* key, T& out,
          std::vector<std::string>& errs) {
  if (!obj.is_object() || !obj.contains(key)) return;
  try {
    obj.at(key).get_to(out);
  } catch (const json::exception& e) {
    errs.push_back(path + "/" + key + ": " + e.what());
  }
}

void parse_model(const json& j, ModelConfig& m, std::vector<std::string>& errs) {
  check_keys(j, "/model", {"preset", "left_rate", "lam_l", "lam_r", "lam_a"}, errs);
  take(j, "/model", "preset", m.preset, errs);
  if (j.is_object() && j.contains("left_rate")) {
    double v = 0.0;
    take(j, "/model", "left_rate", v, errs);
    m.left_rate = v;
  }
  take(j, "/model", "lam_l", m.lam_l, errs);
  take(j, "/model", "lam_r", m.lam_r, errs);
  take(j, "/model", "lam_a", m.lam_a, errs);
  if (m.preset != "ising_t0" && m.preset != "paste_all" && m.preset != "east" &&
      m.preset != "custom")
    errs.push_back("/model/preset: must be one of ising_t0, paste_all, east, custom");
  if (m.preset == "east" && !m.left_rate)
    errs.push_back("/model/left_rate: the east preset needs a user-supplied left rate");
  if (m.preset == "custom" && m.lam_l <= 0.0 && m.lam_r <= 0.0 && m.lam_a <= 0.0)
    errs.push_back("/model: custom preset needs at least one positive rate");
  if (m.lam_l < 0.0 || m.lam_r < 0.0 || m.lam_a < 0.0)
    errs.push_back("/model: rates must be nonnegative");
}

void parse_law(const json& j, LawConfig& l, std::vector<std::string>& errs) {
  check_keys(j, "/initial_law", {"kind", "at", "p", "alpha", "x_max", "sites", "mass"},
             errs);
  take(j, "/initial_law", "kind", l.kind, errs);
  take(j, "/initial_law", "at", l.at, errs);
  take(j, "/initial_law", "p", l.p, errs);
  take(j, "/initial_law", "alpha", l.alpha, errs);
  take(j, "/initial_law", "x_max", l.x_max, errs);
  take(j, "/initial_law", "sites", l.sites, errs);
  take(j, "/initial_law", "mass", l.mass, errs);
  if (l.kind != "delta" && l.kind != "geometric" && l.kind != "zeta_tail" &&
      l.kind != "custom")
    errs.push_back("/initial_law/kind: must be one of delta, geometric, zeta_tail, custom");
  if (l.kind == "delta" && l.at < 1.0)
    errs.push_back("/initial_law/at: delta site must be >= 1");
  if (l.kind == "geometric" && !(l.p > 0.0 && l.p < 1.0))
    errs.push_back("/initial_law/p: must lie in (0,1)");
  if (l.kind == "zeta_tail" && !(l.alpha >= 0.0 && l.alpha <= 1.0))
    errs.push_back("/initial_law/alpha: tail exponent must lie in [0,1]");
  if (l.x_max < 1) errs.push_back("/initial_law/x_max: must be >= 1");
  if (l.kind == "custom" && (l.sites.empty() || l.sites.size() != l.mass.size()))
    errs.push_back("/initial_law: custom law needs matching nonempty sites and mass");
}

void parse_schedule(const json& j, ScheduleConfig& s, std::vector<std::string>& errs) {
  check_keys(j, "/schedule", {"kind", "a", "d"}, errs);
  take(j, "/schedule", "kind", s.kind, errs);
  take(j, "/schedule", "a", s.a, errs);
  take(j, "/schedule", "d", s.d, errs);
  if (s.kind != "linear" && s.kind != "east" && s.kind != "geometric" &&
      s.kind != "explicit")
    errs.push_back("/schedule/kind: must be one of linear, east, geometric, explicit");
  if (s.kind == "geometric" && !(s.a > 1.0 && s.a <= 2.0))
    errs.push_back(
        "/schedule/a: geometric ratio must lie in (1,2] so merged domains stay "
        "inactive (d(n+1) <= 2 d(n))");
  if (s.kind == "explicit" && s.d.size() < 2)
    errs.push_back("/schedule/d: explicit schedule needs at least two thresholds");
}

}  // namespace

IntervalLaw ExperimentConfig::build_law() const {
  const auto& l = initial_law;
  if (l.kind == "delta") {
    const auto k = static_cast<std::int64_t>(std::llround(l.at));
    if (std::abs(l.at - static_cast<double>(k)) > 1e-9)
      throw std::invalid_argument("delta law site must be an integer");
    return interval_law_delta(k);
  }
  if (l.kind == "geometric") return interval_law_geometric(l.p, l.x_max);
  if (l.kind == "zeta_tail") return interval_law_zeta_tail(l.alpha, l.x_max);

  GridMeasure g;
  g.step = 1.0;
  double total = 0.0;
  std::int64_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < l.sites.size(); ++i) {
    const auto s = static_cast<std::int64_t>(std::llround(l.sites[i]));
    if (std::abs(l.sites[i] - static_cast<double>(s)) > 1e-9 || s < 1)
      throw std::invalid_argument("custom law sites must be integers >= 1");
    if (l.mass[i] < 0.0) throw std::invalid_argument("custom law mass must be >= 0");
    if (i == 0) {
      lo = hi = s;
    } else {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    total += l.mass[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("custom law mass must sum to 1");
  g.first = lo;
  g.mass.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < l.sites.size(); ++i) {
    const auto s = static_cast<std::int64_t>(std::llround(l.sites[i]));
    g.mass[static_cast<std::size_t>(s - lo)] += l.mass[i];
  }
  return interval_law_custom(std::move(g), true, "custom");
}

EpochSchedule ExperimentConfig::build_schedule() const {
  const auto& s = schedule;
  if (s.kind == "linear") return EpochSchedule::linear();
  if (s.kind == "east") return EpochSchedule::east();
  if (s.kind == "geometric") return EpochSchedule::geometric(s.a);
  return EpochSchedule::explicit_list(s.d);
}

ModelSpec ExperimentConfig::build_model() const {
  ModelSpec m;
  if (model.preset == "ising_t0") {
    m.preset = ModelPreset::ising_t0;
  } else if (model.preset == "paste_all") {
    m.preset = ModelPreset::paste_all;
  } else if (model.preset == "east") {
    m.preset = ModelPreset::east;
    const double c = *model.left_rate;
    m.user_left = [c](double) { return c; };
  } else {
    m.preset = ModelPreset::custom;
    const double l = model.lam_l, r = model.lam_r, a = model.lam_a;
    if (l > 0.0) m.user_left = [l](double) { return l; };
    if (r > 0.0) m.user_right = [r](double) { return r; };
    if (a > 0.0) m.user_both = [a](double) { return a; };
  }
  return m;
}

Topology ExperimentConfig::build_topology() const {
  return topology == "half_line" ? Topology::half_line : Topology::torus;
}

SGrid ExperimentConfig::build_sgrid() const {
  return SGrid::log_spaced(s_grid.lo, s_grid.hi, static_cast<std::size_t>(s_grid.points));
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }

  std::vector<std::string> errs;
  ExperimentConfig c;
  check_keys(j, "",
             {"model", "initial_law", "schedule", "topology", "n_intervals", "epochs",
              "replicas", "seed", "workers", "s_grid", "outputs", "oracle_x_max", "ode",
              "tolerances", "out_dir"},
             errs);
  if (j.is_object()) {
    if (j.contains("model")) parse_model(j["model"], c.model, errs);
    if (j.contains("initial_law")) parse_law(j["initial_law"], c.initial_law, errs);
    if (j.contains("schedule")) parse_schedule(j["schedule"], c.schedule, errs);
    take(j, "", "topology", c.topology, errs);
    take(j, "", "n_intervals", c.n_intervals, errs);
    take(j, "", "epochs", c.epochs, errs);
    take(j, "", "replicas", c.replicas, errs);
    take(j, "", "seed", c.seed, errs);
    take(j, "", "workers", c.workers, errs);
    if (j.contains("s_grid")) {
      const auto& g = j["s_grid"];
      check_keys(g, "/s_grid", {"lo", "hi", "points"}, errs);
      take(g, "/s_grid", "lo", c.s_grid.lo, errs);
      take(g, "/s_grid", "hi", c.s_grid.hi, errs);
      take(g, "/s_grid", "points", c.s_grid.points, errs);
    }
    if (j.contains("outputs")) {
      const auto& o = j["outputs"];
      check_keys(o, "/outputs",
                 {"interval_law", "leftmost", "ode_check", "oracle", "limit_compare"},
                 errs);
      take(o, "/outputs", "interval_law", c.outputs.interval_law, errs);
      take(o, "/outputs", "leftmost", c.outputs.leftmost, errs);
      take(o, "/outputs", "ode_check", c.outputs.ode_check, errs);
      take(o, "/outputs", "oracle", c.outputs.oracle, errs);
      take(o, "/outputs", "limit_compare", c.outputs.limit_compare, errs);
    }
    take(j, "", "oracle_x_max", c.oracle_x_max, errs);
    if (j.contains("ode")) {
      const auto& o = j["ode"];
      check_keys(o, "/ode", {"dt", "t_end", "x_max"}, errs);
      take(o, "/ode", "dt", c.ode.dt, errs);
      take(o, "/ode", "t_end", c.ode.t_end, errs);
      take(o, "/ode", "x_max", c.ode.x_max, errs);
    }
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      check_keys(t, "/tolerances",
                 {"interval_ks", "laplace_sup", "ode_drift", "limit_sup"}, errs);
      take(t, "/tolerances", "interval_ks", c.tolerances.interval_ks, errs);
      take(t, "/tolerances", "laplace_sup", c.tolerances.laplace_sup, errs);
      take(t, "/tolerances", "ode_drift", c.tolerances.ode_drift, errs);
      take(t, "/tolerances", "limit_sup", c.tolerances.limit_sup, errs);
    }
    take(j, "", "out_dir", c.out_dir, errs);
  }

  if (c.topology != "torus" && c.topology != "half_line")
    errs.push_back("/topology: must be torus or half_line");
  if (c.n_intervals < 1) errs.push_back("/n_intervals: must be >= 1");
  if (c.epochs < 1) errs.push_back("/epochs: must be >= 1");
  if (c.replicas < 1) errs.push_back("/replicas: must be >= 1");
  if (c.workers < 1) errs.push_back("/workers: must be >= 1");
  if (!(c.s_grid.lo > 0.0) || !(c.s_grid.hi > c.s_grid.lo) || c.s_grid.points < 2)
    errs.push_back("/s_grid: need 0 < lo < hi and points >= 2");
  if (c.oracle_x_max < 2) errs.push_back("/oracle_x_max: must be >= 2");
  if (!(c.ode.dt > 0.0) || c.ode.t_end < 0.0 || c.ode.x_max < 1)
    errs.push_back("/ode: need dt > 0, t_end >= 0, x_max >= 1");
  if (c.out_dir.empty()) errs.push_back("/out_dir: must not be empty");

  if (errs.empty()) {
    // structural validation of the assembled pieces
    try {
      EpochSchedule sched = c.build_schedule();
      const auto viol = validate_schedule(sched, c.epochs + 1);
      for (const auto& v : viol.violations)
        errs.push_back("/schedule: " + v.message);
    } catch (const std::exception& e) {
      errs.push_back(std::string("/schedule: ") + e.what());
    }
    try {
      (void)c.build_law();
    } catch (const std::exception& e) {
      errs.push_back(std::string("/initial_law: ") + e.what());
    }
  }

  if (!errs.empty()) {
    std::ostringstream out;
    out << origin << ": invalid config:";
    for (const auto& e : errs) out << "\n  " << e;
    throw std::runtime_error(out.str());
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["model"]["preset"] = c.model.preset;
  if (c.model.left_rate) j["model"]["left_rate"] = *c.model.left_rate;
  if (c.model.preset == "custom") {
    j["model"]["lam_l"] = c.model.lam_l;
    j["model"]["lam_r"] = c.model.lam_r;
    j["model"]["lam_a"] = c.model.lam_a;
  }
  j["initial_law"]["kind"] = c.initial_law.kind;
  if (c.initial_law.kind == "delta") j["initial_law"]["at"] = c.initial_law.at;
  if (c.initial_law.kind == "geometric") {
    j["initial_law"]["p"] = c.initial_law.p;
    j["initial_law"]["x_max"] = c.initial_law.x_max;
  }
  if (c.initial_law.kind == "zeta_tail") {
    j["initial_law"]["alpha"] = c.initial_law.alpha;
    j["initial_law"]["x_max"] = c.initial_law.x_max;
  }
  j["schedule"]["kind"] = c.schedule.kind;
  if (c.schedule.kind == "geometric") j["schedule"]["a"] = c.schedule.a;
  if (c.schedule.kind == "explicit") j["schedule"]["d"] = c.schedule.d;
  j["topology"] = c.topology;
  j["n_intervals"] = c.n_intervals;
  j["epochs"] = c.epochs;
  j["replicas"] = c.replicas;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["s_grid"] = {{"lo", c.s_grid.lo}, {"hi", c.s_grid.hi}, {"points", c.s_grid.points}};
  j["outputs"] = {{"interval_law", c.outputs.interval_law},
                  {"leftmost", c.outputs.leftmost},
                  {"ode_check", c.outputs.ode_check},
                  {"oracle", c.outputs.oracle},
                  {"limit_compare", c.outputs.limit_compare}};
  j["oracle_x_max"] = c.oracle_x_max;
  j["ode"] = {{"dt", c.ode.dt}, {"t_end", c.ode.t_end}, {"x_max", c.ode.x_max}};
  j["tolerances"] = {{"interval_ks", c.tolerances.interval_ks},
                     {"laplace_sup", c.tolerances.laplace_sup},
                     {"ode_drift", c.tolerances.ode_drift},
                     {"limit_sup", c.tolerances.limit_sup}};
  j["out_dir"] = c.out_dir;
  return j.dump(2);
}

}  // namespace hcp
