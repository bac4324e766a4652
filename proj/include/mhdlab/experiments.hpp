#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdlab/run_config.hpp"

namespace mhdlab {

/// Orchestration entry points behind the CLI subcommands. All return
/// process exit codes: 0 ok, 2 config error, 3 numerical failure. They
/// throw nothing; errors are mapped to codes and messages on stderr.

/// Write the configured initial data pair as a checkpoint plus a JSON
/// sidecar with its basic norms and spectral bands.
int cmd_gen_data(const RunConfig& cfg, const std::string& out_path);

/// Evaluate the smallness conditions on the configured initial data;
/// print a table and (optionally) write the reports as JSON.
int cmd_check_conditions(const RunConfig& cfg, const std::string& json_path);

/// Execute a run into cfg.out_dir: config copy, manifest, norm CSVs,
/// condition report, checkpoints. With resume = true, continue an
/// interrupted run from its last checkpoint (abort_after_steps is ignored
/// on the resumed leg).
int cmd_run(RunConfig cfg, bool resume = false);

/// One run per value of a numeric config axis ("m", "viscosity", "dt",
/// ..., or the virtual axis "nu_minus" which moves mu1 and mu2 in
/// opposite directions holding their mean fixed). Writes member run
/// directories plus sweep_summary.csv under cfg.out_dir.
int cmd_sweep(const RunConfig& base, const std::string& axis,
              const std::vector<double>& values);

/// Annotate a finished run directory with bootstrap trace CSVs and the
/// forced-component bound check.
int cmd_monitor(const std::string& run_dir);

/// Run the full inequality battery at grid size n; JSON summary plus raw
/// ratio CSVs under out_dir.
int cmd_inequality_suite(int n, int samples, std::uint64_t seed,
                         const std::string& out_dir);

/// One-shot norm evaluation of a checkpoint (1, 3 or 6 components);
/// prints JSON to stdout.
int cmd_norms(const std::string& checkpoint_path, double p, double r, int oversample);

}  // namespace mhdlab
