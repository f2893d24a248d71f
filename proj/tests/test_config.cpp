#include <stdexcept>
#include <string>

#include "doctest.h"
#include "hcp/config.hpp"

namespace {

std::string parse_error(const std::string& text) {
  try {
    hcp::parse_config_text(text, "probe.json");
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return {};
}

bool mentions(const std::string& msg, const std::string& needle) {
  return msg.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("a complete config round-trips through the parser") {
  const auto c = hcp::parse_config_text(R"({
    "model": {"preset": "paste_all"},
    "initial_law": {"kind": "geometric", "p": 0.25, "x_max": 128},
    "schedule": {"kind": "geometric", "a": 2.0},
    "topology": "half_line",
    "n_intervals": 5000,
    "epochs": 4,
    "replicas": 3,
    "seed": 99,
    "workers": 2,
    "s_grid": {"lo": 0.1, "hi": 5.0, "points": 16},
    "outputs": {"leftmost": true, "oracle": true},
    "oracle_x_max": 4096,
    "ode": {"dt": 0.002, "t_end": 8.0, "x_max": 96},
    "tolerances": {"interval_ks": 0.02},
    "out_dir": "runs/demo"
  })");
  CHECK(c.model.preset == "paste_all");
  CHECK(c.initial_law.p == 0.25);
  CHECK(c.schedule.a == 2.0);
  CHECK(c.n_intervals == 5000);
  CHECK(c.epochs == 4);
  CHECK(c.seed == 99);
  CHECK(c.outputs.leftmost);
  CHECK(c.outputs.oracle);
  CHECK_FALSE(c.outputs.ode_check);
  CHECK(c.tolerances.interval_ks == 0.02);
  CHECK(c.tolerances.laplace_sup == 0.05);  // untouched default
  CHECK(c.out_dir == "runs/demo");

  CHECK(c.build_topology() == hcp::Topology::half_line);
  CHECK(c.build_sgrid().s.size() == 16);
  CHECK(c.build_sgrid().s.front() == 0.1);
  CHECK(c.build_schedule().d(3) == 4.0);
  CHECK(c.build_law().grid.mass[0] == 0.25);

  // the JSON echo parses back to the same effective config
  const auto again = hcp::parse_config_text(hcp::config_to_json(c));
  CHECK(again.model.preset == c.model.preset);
  CHECK(again.initial_law.p == c.initial_law.p);
  CHECK(again.schedule.a == c.schedule.a);
  CHECK(again.seed == c.seed);
  CHECK(again.tolerances.interval_ks == c.tolerances.interval_ks);
  CHECK(again.out_dir == c.out_dir);
}

TEST_CASE("unknown keys are rejected with their paths") {
  const auto top = parse_error(R"({"epocs": 3})");
  CHECK(mentions(top, "/epocs: unknown key"));
  const auto nested = parse_error(R"({
    "model": {"presett": "east"},
    "s_grid": {"low": 0.1},
    "outputs": {"intervals": true},
    "tolerances": {"ks": 0.1}
  })");
  CHECK(mentions(nested, "/model/presett: unknown key"));
  CHECK(mentions(nested, "/s_grid/low: unknown key"));
  CHECK(mentions(nested, "/outputs/intervals: unknown key"));
  CHECK(mentions(nested, "/tolerances/ks: unknown key"));
}

TEST_CASE("every problem is reported at once") {
  const auto msg = parse_error(R"({
    "model": {"preset": "glauber"},
    "initial_law": {"kind": "geometric", "p": 1.5},
    "topology": "circle",
    "epochs": 0
  })");
  CHECK(mentions(msg, "probe.json: invalid config:"));
  CHECK(mentions(msg, "/model/preset"));
  CHECK(mentions(msg, "/initial_law/p"));
  CHECK(mentions(msg, "/topology"));
  CHECK(mentions(msg, "/epochs"));
}

TEST_CASE("the geometric ratio guard names the constraint") {
  const auto msg = parse_error(R"({"schedule": {"kind": "geometric", "a": 2.5}})");
  CHECK(mentions(msg,
                 "geometric ratio must lie in (1,2] so merged domains stay "
                 "inactive (d(n+1) <= 2 d(n))"));
  const auto east = parse_error(R"({"model": {"preset": "east"}})");
  CHECK(mentions(east, "/model/left_rate"));
}

TEST_CASE("structural checks run on the assembled pieces") {
  // thresholds more than doubling leave merged domains active again
  const auto resched = parse_error(
      R"({"schedule": {"kind": "explicit", "d": [1, 3]}, "epochs": 1})");
  CHECK(mentions(resched, "/schedule:"));

  const auto deep = parse_error(R"({"schedule": {"kind": "east"}, "epochs": 60})");
  CHECK(mentions(deep, "exceeds exact integer range"));

  const auto frac = parse_error(
      R"({"initial_law": {"kind": "custom", "sites": [1.5], "mass": [1.0]}})");
  CHECK(mentions(frac, "custom law sites must be integers >= 1"));

  const auto lone = parse_error(R"({"schedule": {"kind": "explicit", "d": [1]}})");
  CHECK(mentions(lone, "explicit schedule needs at least two thresholds"));
}

TEST_CASE("builders materialize the declared objects") {
  const auto delta = hcp::parse_config_text(R"({"initial_law": {"kind": "delta", "at": 2}})");
  const auto dl = delta.build_law();
  CHECK(dl.grid.first == 2);
  CHECK(dl.grid.mass.size() == 1);
  CHECK(dl.mean == 2.0);

  const auto custom = hcp::parse_config_text(R"({
    "initial_law": {"kind": "custom", "sites": [3, 1], "mass": [0.75, 0.25]}
  })");
  const auto cl = custom.build_law();
  CHECK(cl.grid.first == 1);
  REQUIRE(cl.grid.mass.size() == 3);
  CHECK(cl.grid.mass[0] == 0.25);
  CHECK(cl.grid.mass[1] == 0.0);
  CHECK(cl.grid.mass[2] == 0.75);

  const auto east = hcp::parse_config_text(R"({
    "model": {"preset": "east", "left_rate": 0.25}
  })");
  const auto em = east.build_model();
  CHECK(em.preset == hcp::ModelPreset::east);
  CHECK(em.user_left(5.0) == 0.25);

  const auto mixed = hcp::parse_config_text(R"({
    "model": {"preset": "custom", "lam_l": 0.5, "lam_a": 1.0}
  })");
  const auto mm = mixed.build_model();
  CHECK(mm.user_left(2.0) == 0.5);
  CHECK(mm.user_both(2.0) == 1.0);
  CHECK_FALSE(static_cast<bool>(mm.user_right));
}

TEST_CASE("parse failures carry the origin") {
  const auto broken = parse_error("{");
  CHECK(mentions(broken, "probe.json"));
  CHECK_THROWS_WITH_AS(hcp::load_config_file("/no/such/file.json"),
                       "/no/such/file.json: cannot open config file",
                       std::runtime_error);
}
