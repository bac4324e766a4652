#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mhdlab {

/// One monitored norm: kind "besov" uses (s, p, r), kind "chi" uses s only.
/// field is one of u, B, W+, W-.
struct NormRequest {
    std::string field;
    std::string kind;
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;

    bool operator==(const NormRequest&) const = default;
};

/// Full description of one experiment. Physics parameters carry no
/// defaults; everything else does. Parsed from a flat key = value text
/// format (# comments, one key per line).
struct RunConfig {
    // grid and physics (required)
    int n = 0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double dt = 0.0;
    double t_end = -1.0;

    // integrator
    std::string scheme = "if-rk2";  // if-rk2 | if-rk4
    double cfl_safety = 0.9;
    int snapshot_every = 10;    // steps between norm snapshots
    int checkpoint_every = 0;   // snapshots between state checkpoints; 0 = final only

    // initial data: a stream recipe (seed 0 = deterministic) or a checkpoint
    std::string init = "stream";  // stream | checkpoint
    std::string checkpoint_path;
    double rho1 = 1.5;
    double rho2 = 2.5;
    double amplitude = 1.0;
    int m = 1;
    std::uint64_t seed = 0;

    // monitored norms; empty = default monitor set derived from cond_p/cond_r
    std::vector<NormRequest> norms;

    // condition/monitor constants
    double const_C = 1.0;
    double const_eta = 0.01;
    double const_eps0 = 0.05;
    double const_C1 = 1.0;
    double const_C2 = 1.0;
    double const_b = 0.0;  // 0 = skip the chi bootstrap threshold
    double epsilon = 0.0;
    double cond_p = 6.0;
    double cond_r = 1.0;

    int oversample = 1;
    std::string out_dir = "run_out";
    int abort_after_steps = 0;  // testing hook: simulate an interrupted run

    bool operator==(const RunConfig&) const = default;
};

/// Parse and validate; throws ConfigError with line information on parse
/// failures and names the violated rule on validation failures. Unknown
/// keys are rejected with a nearest-match suggestion.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical serialization.
std::uint64_t config_hash(const RunConfig& cfg);

/// The default monitored-norm set used when cfg.norms is empty: W+ and W-
/// Besov at s = 3/p -+ 1 plus the chi norms the monitors need.
std::vector<NormRequest> default_norms(double p, double r);

}  // namespace mhdlab
