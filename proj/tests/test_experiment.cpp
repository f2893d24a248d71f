#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "hcp/experiment.hpp"
#include "hcp/version.hpp"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
  const fs::path p = fs::temp_directory_path() / "hcp_exp_tests" / leaf;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

hcp::ExperimentConfig config_with(const std::string& body, const fs::path& out_dir) {
  auto cfg = hcp::parse_config_text(body);
  cfg.out_dir = out_dir.string();
  return cfg;
}

}  // namespace

TEST_CASE("an experiment writes its declared artifacts and a passing report") {
  const auto dir = fresh_dir("artifacts");
  const auto cfg = config_with(R"({
    "model": {"preset": "ising_t0"},
    "initial_law": {"kind": "delta", "at": 1},
    "schedule": {"kind": "linear"},
    "n_intervals": 400,
    "epochs": 2,
    "replicas": 4,
    "seed": 7,
    "s_grid": {"lo": 0.2, "hi": 2.0, "points": 8},
    "outputs": {"interval_law": true, "oracle": true, "ode_check": true,
                "limit_compare": true},
    "oracle_x_max": 512,
    "ode": {"dt": 0.01, "t_end": 2.0, "x_max": 48},
    "tolerances": {"interval_ks": 0.5, "laplace_sup": 0.5, "ode_drift": 0.001,
                   "limit_sup": 2.0}
  })",
                               dir);

  const auto res = hcp::run_experiment(cfg);
  REQUIRE_FALSE(res.files.empty());
  CHECK(fs::path(res.files.back()).filename() == "report.json");
  std::set<std::string> names;
  for (const auto& f : res.files) {
    CHECK(fs::exists(f));
    names.insert(fs::path(f).filename().string());
  }
  for (const char* want :
       {"empirical_interval_laplace.csv", "empirical_interval.csv",
        "oracle_interval_laplace.csv", "oracle_interval.csv",
        "limit_interval_laplace.csv", "ode_trajectory.csv", "report.json"})
    CHECK(names.count(want) == 1);

  CHECK(first_line(dir / "empirical_interval_laplace.csv") == "epoch,s,value,stderr");
  CHECK(first_line(dir / "empirical_interval.csv") == "epoch,z_bin_lo,z_bin_hi,mass");
  CHECK(first_line(dir / "ode_trajectory.csv") == "t,s,G,H,L,drift");

  const auto report = nlohmann::json::parse(res.report_json);
  CHECK(report.at("schema_version").get<int>() == hcp::kReportSchemaVersion);
  CHECK(report.at("tool_version").get<std::string>() == hcp::kToolVersion);
  CHECK(report.at("seed").get<int>() == 7);
  CHECK(report.at("config").at("seed").get<int>() == 7);
  CHECK(report.at("case").at("kind").get<std::string>() == "with_annihilation");
  CHECK(report.at("case").at("gamma").get<double>() == 0.0);
  CHECK(report.at("oracle").at("available").get<bool>());
  CHECK(report.at("epochs").size() == 2);
  CHECK(report.at("epochs")[0].at("count").get<int>() > 0);

  std::set<std::string> check_names;
  for (const auto& c : report.at("checks")) {
    check_names.insert(c.at("name").get<std::string>());
    CHECK(c.at("pass").get<bool>());
  }
  CHECK(check_names ==
        std::set<std::string>{"empirical_vs_oracle_laplace_sup", "empirical_vs_oracle_ks",
                              "oracle_vs_limit_sup", "ode_invariant_drift"});
  CHECK(report.at("pass").get<bool>() == res.pass);
  CHECK(res.pass);
  CHECK(slurp(dir / "report.json") == res.report_json + "\n");
}

TEST_CASE("reruns and extra workers reproduce every byte") {
  const char* body = R"({
    "model": {"preset": "ising_t0"},
    "initial_law": {"kind": "geometric", "p": 0.5, "x_max": 64},
    "schedule": {"kind": "linear"},
    "topology": "half_line",
    "n_intervals": 150,
    "epochs": 3,
    "replicas": 18,
    "seed": 41,
    "s_grid": {"lo": 0.2, "hi": 2.0, "points": 6},
    "outputs": {"interval_law": true, "leftmost": true, "oracle": true},
    "oracle_x_max": 512,
    "tolerances": {"interval_ks": 1.0, "laplace_sup": 1.0}
  })";
  const auto da = fresh_dir("rerun_a");
  const auto db = fresh_dir("rerun_b");
  const auto dc = fresh_dir("rerun_c");
  const auto ra = hcp::run_experiment(config_with(body, da));
  const auto rb = hcp::run_experiment(config_with(body, db));
  auto cw = config_with(body, dc);
  cw.workers = 3;
  const auto rc = hcp::run_experiment(cw);

  CHECK(ra.pass);
  std::size_t compared = 0;
  for (const auto& f : ra.files) {
    const auto name = fs::path(f).filename();
    if (name == "report.json") continue;  // embeds wall-clock times
    const auto bytes = slurp(f);
    CHECK(bytes == slurp(db / name));
    CHECK(bytes == slurp(dc / name));
    ++compared;
  }
  CHECK(compared >= 4);  // interval + leftmost + two oracle files
  for (const char* want : {"empirical_leftmost_laplace.csv", "oracle_leftmost_laplace.csv"})
    CHECK(fs::exists(da / want));

  CHECK(hcp::compare_artifacts((da / "empirical_interval_laplace.csv").string(),
                               (db / "empirical_interval_laplace.csv").string(),
                               0.0) == 0);
}

TEST_CASE("comparison verdicts distinguish match, drift, and schema") {
  const auto dir = fresh_dir("compare");
  const auto lap1 = dir / "lap1.csv";
  const auto lap2 = dir / "lap2.csv";
  const auto lap3 = dir / "lap3.csv";
  spit(lap1, "epoch,s,value,stderr\n1,0.5,0.9,0\n1,1,0.8,0\n");
  spit(lap2, "epoch,s,value,stderr\n1,0.5,0.9,0\n1,1,0.85,0\n");
  spit(lap3, "epoch,s,value,stderr\n1,0.5,0.9,0\n1,1.5,0.8,0\n");

  std::string note;
  CHECK(hcp::compare_artifacts(lap1.string(), lap1.string(), 0.0) == 0);
  CHECK(hcp::compare_artifacts(lap1.string(), lap2.string(), 0.1, &note) == 0);
  CHECK(note.find("sup |value difference|") != std::string::npos);
  CHECK(hcp::compare_artifacts(lap1.string(), lap2.string(), 0.01) == 1);
  CHECK(hcp::compare_artifacts(lap1.string(), lap3.string(), 1.0, &note) == 2);
  CHECK(note.find("grids differ") != std::string::npos);

  // interval schema: KS over cumulative mass, reset at each epoch
  const auto int1 = dir / "int1.csv";
  const auto int2 = dir / "int2.csv";
  spit(int1,
       "epoch,z_bin_lo,z_bin_hi,mass\n1,1,1.5,0.6\n1,1.5,2,0.4\n2,1,2,1\n");
  spit(int2,
       "epoch,z_bin_lo,z_bin_hi,mass\n1,1,1.5,0.55\n1,1.5,2,0.45\n2,1,2,1\n");
  CHECK(hcp::compare_artifacts(int1.string(), int2.string(), 0.1, &note) == 0);
  CHECK(note.find("KS distance") != std::string::npos);
  CHECK(hcp::compare_artifacts(int1.string(), int2.string(), 0.01) == 1);

  CHECK(hcp::compare_artifacts(lap1.string(), int1.string(), 1.0) == 2);

  const auto shorter = dir / "short.csv";
  spit(shorter, "epoch,s,value,stderr\n1,0.5,0.9,0\n");
  CHECK(hcp::compare_artifacts(lap1.string(), shorter.string(), 1.0) == 2);

  const auto odd = dir / "odd.csv";
  spit(odd, "a,b\n1,2\n");
  CHECK(hcp::compare_artifacts(odd.string(), odd.string(), 1.0) == 2);

  CHECK(hcp::compare_artifacts((dir / "missing.csv").string(), lap1.string(), 1.0) == 2);
}

TEST_CASE("oracle refusals are explained") {
  const auto dir = fresh_dir("refusal");
  const auto cfg = config_with(R"({
    "initial_law": {"kind": "delta", "at": 1},
    "schedule": {"kind": "geometric", "a": 1.5},
    "n_intervals": 200,
    "epochs": 3,
    "replicas": 2,
    "s_grid": {"lo": 0.2, "hi": 2.0, "points": 4},
    "outputs": {"interval_law": true, "oracle": true}
  })",
                               dir);
  const auto res = hcp::run_experiment(cfg);
  const auto report = nlohmann::json::parse(res.report_json);
  CHECK(report.at("oracle").at("requested").get<bool>());
  CHECK_FALSE(report.at("oracle").at("available").get<bool>());
  CHECK(report.at("oracle").at("reason").get<std::string>() ==
        "schedule thresholds are not integers");
  CHECK(report.at("distances").at("empirical_vs_oracle_laplace_sup").is_null());
  CHECK(report.at("checks").empty());
  CHECK(res.pass);
  for (const auto& f : res.files)
    CHECK(fs::path(f).filename().string().find("oracle") == std::string::npos);

  // integer schedule, but the oracle grid stops short of the last threshold
  const auto dir2 = fresh_dir("refusal2");
  const auto cfg2 = config_with(R"({
    "initial_law": {"kind": "delta", "at": 1},
    "schedule": {"kind": "east"},
    "n_intervals": 200,
    "epochs": 5,
    "replicas": 2,
    "s_grid": {"lo": 0.2, "hi": 2.0, "points": 4},
    "outputs": {"interval_law": true, "oracle": true},
    "oracle_x_max": 8
  })",
                                dir2);
  const auto res2 = hcp::run_experiment(cfg2);
  const auto report2 = nlohmann::json::parse(res2.report_json);
  CHECK_FALSE(report2.at("oracle").at("available").get<bool>());
  CHECK(report2.at("oracle").at("reason").get<std::string>() ==
        "oracle_x_max below the last epoch threshold");
}
