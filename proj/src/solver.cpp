#include "mhdlab/solver.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace mhdlab {
namespace {

// Separable viscous semigroup e^{-mu |k|^2 tau} = prod_m e^{-mu k_m^2 tau}.
struct DecayTable {
    Grid grid;
    std::vector<double> axis;  // e^{-mu k^2 tau} per storage index

    DecayTable(Grid g, double mu_tau) : grid(g), axis(g.n) {
        for (int i = 0; i < g.n; ++i) {
            const double k = g.freq(i);
            axis[i] = std::exp(-mu_tau * k * k);
        }
    }

    void apply(VectorField& f) const {
        const Grid g = grid;
        for (int c = 0; c < 3; ++c)
            for (int i1 = 0; i1 < g.n; ++i1)
                for (int i2 = 0; i2 < g.n; ++i2) {
                    const double d12 = axis[i1] * axis[i2];
                    cplx* row = &f[c].c[g.flat(i1, i2, 0)];
                    for (int i3 = 0; i3 < g.n; ++i3) row[i3] *= d12 * axis[i3];
                }
    }
};

void axpy(VectorField& y, double a, const VectorField& x) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < y[c].c.size(); ++i) y[c].c[i] += a * x[c].c[i];
}

}  // namespace

Scheme scheme_from_name(const std::string& name) {
    if (name == "if-rk2") return Scheme::if_rk2;
    if (name == "if-rk4") return Scheme::if_rk4;
    throw ConfigError("unknown scheme '" + name + "' (if-rk2, if-rk4)");
}

Tendencies rhs_nonlinear(const State& s) {
    const Grid g = s.grid();
    std::array<PhysicalField, 3> up, bp;
    for (int c = 0; c < 3; ++c) {
        up[c] = to_physical(s.u[c]);
        bp[c] = to_physical(s.B[c]);
    }
    Tendencies out;
    double poison = 0.0;  // non-finite samples must reach the guard in step()
    for (int c = 0; c < 3; ++c) {
        for (double v : up[c].v) {
            out.max_speed = std::max(out.max_speed, std::abs(v));
            poison += v;
        }
        for (double v : bp[c].v) {
            out.max_speed = std::max(out.max_speed, std::abs(v));
            poison += v;
        }
    }
    if (!std::isfinite(poison))
        out.max_speed = std::numeric_limits<double>::quiet_NaN();

    // Momentum: du_i = -d_j (u_i u_j - B_i B_j), assembled from the six
    // independent entries of the symmetric stress.
    std::array<std::array<SpectralField, 3>, 3> stress;
    PhysicalField work(g);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            for (std::size_t x = 0; x < work.v.size(); ++x)
                work.v[x] = up[i].v[x] * up[j].v[x] - bp[i].v[x] * bp[j].v[x];
            stress[i][j] = to_spectral(work);
        }
    VectorField du(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const SpectralField& sij = j >= i ? stress[i][j] : stress[j][i];
            du[i] -= derivative(sij, j);
        }

    // Induction: dB = curl(u x B).
    VectorField e(g);
    for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        for (std::size_t x = 0; x < work.v.size(); ++x)
            work.v[x] = up[a].v[x] * bp[b].v[x] - up[b].v[x] * bp[a].v[x];
        e[i] = to_spectral(work);
    }
    VectorField dB = curl(e);

    dealias(du);
    dealias(dB);
    out.du = leray_project(du);
    out.dB = leray_project(dB);
    strip_mean_and_nyquist(out.du);
    strip_mean_and_nyquist(out.dB);
    return out;
}

State step(const State& s, double mu1, double mu2, const IntegratorParams& params) {
    const Grid g = s.grid();
    const double dt = params.dt;
    if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");

    Tendencies k1 = rhs_nonlinear(s);
    if (!std::isfinite(k1.max_speed))
        throw NumericalAbort("non-finite state at t = " + std::to_string(s.t));
    if (k1.max_speed > 0.0) {
        const double admissible = params.cfl_safety * g.spacing() / k1.max_speed;
        if (dt > admissible) throw CflError(admissible);
    }

    const DecayTable e1u(g, mu1 * dt), e1b(g, mu2 * dt);
    State out;
    out.t = s.t + dt;

    if (params.scheme == Scheme::if_rk2) {
        // Heun with exact factor: y+ = E y + dt/2 (E k1 + k2),
        // k2 evaluated at the predictor E (y + dt k1).
        State pred;
        pred.t = out.t;
        pred.u = s.u;
        axpy(pred.u, dt, k1.du);
        pred.B = s.B;
        axpy(pred.B, dt, k1.dB);
        e1u.apply(pred.u);
        e1b.apply(pred.B);
        Tendencies k2 = rhs_nonlinear(pred);

        out.u = s.u;
        axpy(out.u, 0.5 * dt, k1.du);
        e1u.apply(out.u);
        axpy(out.u, 0.5 * dt, k2.du);
        out.B = s.B;
        axpy(out.B, 0.5 * dt, k1.dB);
        e1b.apply(out.B);
        axpy(out.B, 0.5 * dt, k2.dB);
    } else {
        // Classic RK4 on the integrating-factor-transformed variable.
        const DecayTable hu(g, 0.5 * mu1 * dt), hb(g, 0.5 * mu2 * dt);
        auto half = [&](const VectorField& base, double a, const VectorField& add,
                        const DecayTable& t) {
            VectorField v = base;
            axpy(v, a, add);
            t.apply(v);
            return v;
        };
        State s2{s.t + 0.5 * dt, half(s.u, 0.5 * dt, k1.du, hu), half(s.B, 0.5 * dt, k1.dB, hb)};
        Tendencies k2 = rhs_nonlinear(s2);

        VectorField uh = s.u, bh = s.B;
        hu.apply(uh);
        hb.apply(bh);
        State s3 = s2;
        s3.u = uh;
        axpy(s3.u, 0.5 * dt, k2.du);
        s3.B = bh;
        axpy(s3.B, 0.5 * dt, k2.dB);
        Tendencies k3 = rhs_nonlinear(s3);

        State s4;
        s4.t = out.t;
        s4.u = uh;
        axpy(s4.u, dt, k3.du);
        hu.apply(s4.u);
        s4.B = bh;
        axpy(s4.B, dt, k3.dB);
        hb.apply(s4.B);
        Tendencies k4 = rhs_nonlinear(s4);

        // u+ = E1 u + dt/6 (E1 k1 + 2 E1/2 (k2 + k3) + k4)
        out.u = s.u;
        axpy(out.u, dt / 6.0, k1.du);
        e1u.apply(out.u);
        VectorField mid_u = k2.du + k3.du;
        hu.apply(mid_u);
        axpy(out.u, dt / 3.0, mid_u);
        axpy(out.u, dt / 6.0, k4.du);

        out.B = s.B;
        axpy(out.B, dt / 6.0, k1.dB);
        e1b.apply(out.B);
        VectorField mid_b = k2.dB + k3.dB;
        hb.apply(mid_b);
        axpy(out.B, dt / 3.0, mid_b);
        axpy(out.B, dt / 6.0, k4.dB);
    }

    // Drift control: re-project and restore structural zeros.
    out.u = leray_project(out.u);
    out.B = leray_project(out.B);
    strip_mean_and_nyquist(out.u);
    strip_mean_and_nyquist(out.B);
    return out;
}

EnergyReport energy_report(const State& s, double mu1, double mu2) {
    const Grid g = s.grid();
    EnergyReport rep;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                const double kk = k1 * k1 + k2 * k2 + k3 * k3;
                const std::size_t idx = g.flat(i1, i2, i3);
                double eu = 0.0, eb = 0.0;
                for (int c = 0; c < 3; ++c) {
                    eu += std::norm(s.u[c].c[idx]);
                    eb += std::norm(s.B[c].c[idx]);
                }
                rep.kinetic += 0.5 * eu;
                rep.magnetic += 0.5 * eb;
                rep.dissipation_u += mu1 * kk * eu;
                rep.dissipation_B += mu2 * kk * eb;
            }
    return rep;
}

std::string block_hist_key(const std::string& field, double p) {
    std::ostringstream os;
    os << field << "|" << p;
    return os.str();
}

std::string chi_series_key(const std::string& field, double s) {
    std::ostringstream os;
    os << field << "|chi|" << s;
    return os.str();
}

State initial_state(const RunConfig& cfg) {
    if (cfg.init != "stream")
        throw ConfigError("initial_state: config does not use a stream recipe");
    const Grid g = Grid::make(cfg.n);
    StreamSpec spec{cfg.rho1, cfg.rho2, cfg.amplitude, cfg.seed};
    DataPair pair = large_data_pair(make_stream(spec, g), cfg.m);
    return State{0.0, std::move(pair.u0), std::move(pair.B0)};
}

namespace {

const VectorField& select_field(const std::string& name, const State& s,
                                const VectorField& wp, const VectorField& wm) {
    if (name == "u") return s.u;
    if (name == "B") return s.B;
    if (name == "W+") return wp;
    if (name == "W-") return wm;
    throw ConfigError("unknown field '" + name + "' (u, B, W+, W-)");
}

}  // namespace

void run_loop(const RunConfig& cfg, const DyadicPartition& part, State s, int start_step,
              RunResult& res, const SnapshotSink& sink) {
    const std::vector<NormRequest> norms =
        cfg.norms.empty() ? default_norms(cfg.cond_p, cfg.cond_r) : cfg.norms;

    std::set<std::pair<std::string, double>> besov_keys;
    std::vector<NormRequest> chi_reqs;
    for (const auto& nr : norms) {
        if (nr.kind == "besov")
            besov_keys.insert({nr.field, nr.p});
        else if (nr.kind == "chi")
            chi_reqs.push_back(nr);
        else
            throw ConfigError("unknown norm kind '" + nr.kind + "'");
    }
    for (const auto& [field, p] : besov_keys) {
        auto& h = res.block_hist[block_hist_key(field, p)];
        if (h.times.empty()) {
            h.j_min = part.j_min();
            h.j_max = part.j_max();
            h.p = p;
        }
    }

    const int total_steps =
        cfg.t_end <= 0.0 ? 0 : static_cast<int>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    IntegratorParams ip;
    ip.dt = cfg.dt;
    ip.scheme = scheme_from_name(cfg.scheme);
    ip.cfl_safety = cfg.cfl_safety;

    double initial_linf = -1.0;
    auto record = [&](const State& st, int step_idx) {
        const double linf = std::max(lp_norm(st.u, inf), lp_norm(st.B, inf));
        if (!std::isfinite(linf))
            throw NumericalAbort("non-finite field at t = " + std::to_string(st.t));
        if (initial_linf < 0.0 && step_idx == 0) initial_linf = linf;
        if (initial_linf > 0.0 && linf > 1e6 * initial_linf)
            throw NumericalAbort("blow-up guard: max speed exceeded 1e6 x initial");

        VectorField wp = st.u + st.B;
        VectorField wm = st.u - st.B;
        res.times.push_back(st.t);
        for (const auto& [field, p] : besov_keys) {
            const VectorField& f = select_field(field, st, wp, wm);
            res.block_hist[block_hist_key(field, p)].append(
                st.t, block_norms(f, p, part, cfg.oversample));
        }
        for (const auto& nr : chi_reqs) {
            const VectorField& f = select_field(nr.field, st, wp, wm);
            res.chi_series[chi_series_key(nr.field, nr.s)].push_back(chi_norm(f, nr.s));
        }
        if (sink) sink(st, step_idx, step_idx == total_steps);
    };

    if (start_step == 0 && res.times.empty()) record(s, 0);
    if (initial_linf < 0.0) initial_linf = std::max(lp_norm(s.u, inf), lp_norm(s.B, inf));

    int executed = 0;
    for (int stp = start_step; stp < total_steps; ++stp) {
        if (cfg.abort_after_steps > 0 && executed == cfg.abort_after_steps) {
            res.abort_reason = "interrupted";
            res.final_state = std::move(s);
            return;
        }
        IntegratorParams ip_step = ip;
        const double remaining = cfg.t_end - stp * cfg.dt;
        if (remaining < ip.dt) ip_step.dt = remaining;
        s = step(s, cfg.mu1, cfg.mu2, ip_step);
        s.t = std::min((stp + 1) * cfg.dt, cfg.t_end);  // keep times exactly gridded
        ++executed;
        ++res.steps_taken;
        const int idx = stp + 1;
        if (idx % cfg.snapshot_every == 0 || idx == total_steps) record(s, idx);
    }
    res.final_state = std::move(s);
}

RunResult run(const RunConfig& cfg, const DyadicPartition& part, const SnapshotSink& sink) {
    RunResult res;
    run_loop(cfg, part, initial_state(cfg), 0, res, sink);
    return res;
}

}  // namespace mhdlab
