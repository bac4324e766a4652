#pragma once

#include <functional>
#include <map>
#include <string>

#include "mhdlab/errors.hpp"
#include "mhdlab/function_spaces.hpp"
#include "mhdlab/initial_data.hpp"
#include "mhdlab/run_config.hpp"
#include "mhdlab/spectral_ops.hpp"

namespace mhdlab {

struct State {
    double t = 0.0;
    VectorField u, B;

    State() = default;
    State(double time, VectorField uu, VectorField bb)
        : t(time), u(std::move(uu)), B(std::move(bb)) {}
    Grid grid() const { return u.grid(); }
};

enum class Scheme { if_rk2, if_rk4 };
Scheme scheme_from_name(const std::string& name);

struct IntegratorParams {
    double dt = 1e-3;
    Scheme scheme = Scheme::if_rk2;
    double cfl_safety = 0.9;
    double t_end = 1.0;
    int snapshot_every = 10;
};

/// Nonlinear tendencies in conservative form: du = -P div(u u - B B),
/// dB = curl(u x B), both dealiased and Leray-projected. max_speed is the
/// largest pointwise |component| over u and B (the CFL velocity), measured
/// from the same physical-space arrays the products use.
struct Tendencies {
    VectorField du, dB;
    double max_speed = 0.0;
};
Tendencies rhs_nonlinear(const State& s);

/// One step of the integrating-factor scheme: the viscous semigroups
/// e^{-mu1 |k|^2 dt}, e^{-mu2 |k|^2 dt} are applied exactly; the nonlinear
/// part is advanced with RK2 (Heun) or classic RK4 on the transformed
/// variable. Throws CflError when dt is inadmissible at this state.
State step(const State& s, double mu1, double mu2, const IntegratorParams& params);

struct EnergyReport {
    double kinetic = 0.0;        // (1/2)||u||^2
    double magnetic = 0.0;       // (1/2)||B||^2
    double dissipation_u = 0.0;  // mu1 ||grad u||^2
    double dissipation_B = 0.0;  // mu2 ||grad B||^2
};
EnergyReport energy_report(const State& s, double mu1, double mu2);

/// In-memory result of a run: snapshot times, one BlockNormHistory per
/// (field, p) pair appearing among the Besov requests, and plain series
/// for the chi requests (key "<field>|chi|<s>").
struct RunResult {
    std::vector<double> times;
    std::map<std::string, BlockNormHistory> block_hist;  // key "<field>|<p>"
    std::map<std::string, std::vector<double>> chi_series;
    State final_state;
    std::string abort_reason;  // empty = completed; "interrupted" = testing hook
    int steps_taken = 0;
};

std::string block_hist_key(const std::string& field, double p);
std::string chi_series_key(const std::string& field, double s);

/// Called after each recorded snapshot (for persistence).
using SnapshotSink = std::function<void(const State&, int step, bool is_final)>;

/// Run from the configured initial data. Norm snapshots land every
/// snapshot_every steps plus the final step; NaN/Inf and the 1e6 x initial
/// max-speed blow-up guard abort with NumericalAbort.
RunResult run(const RunConfig& cfg, const DyadicPartition& part,
              const SnapshotSink& sink = nullptr);

/// Continue a run from a restored state (resume path). `start_step` is the
/// step index of the restored state; histories in `res` must already hold
/// the snapshots up to and including that step.
void run_loop(const RunConfig& cfg, const DyadicPartition& part, State s, int start_step,
              RunResult& res, const SnapshotSink& sink);

/// Initial state for a config (stream recipe path only).
State initial_state(const RunConfig& cfg);

}  // namespace mhdlab
