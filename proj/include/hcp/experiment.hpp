#pragma once

#include <string>
#include <vector>

#include "hcp/config.hpp"

namespace hcp {

/// Outcome of one experiment run.  `pass` reflects every enabled check
/// against the configured tolerances; the serialized report mirrors what was
/// written to <out_dir>/report.json.
struct ExperimentResult {
  bool pass = true;
  std::string report_json;
  std::vector<std::string> files;  // paths written, report last
};

/// Execute a validated config end to end: simulate, run the requested
/// analytic/ODE/limit companions, write CSV artifacts + report.json into
/// cfg.out_dir (created if missing).  Throws on I/O or setup failure.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Compare two CSV artifacts of the same schema (transform files
/// "epoch,s,value,stderr" or interval files "epoch,z_bin_lo,z_bin_hi,mass").
/// Returns 0 when the sup distance (transforms) / KS distance (interval
/// laws) stays within tol, 1 when exceeded, 2 when the files cannot be
/// compared (schema or grid mismatch).  A human-readable summary is appended
/// to *summary when given.
int compare_artifacts(const std::string& path_a, const std::string& path_b,
                      double tol, std::string* summary = nullptr);

}  // namespace hcp
