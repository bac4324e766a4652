#include "mhdlab/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhdlab/random_fields.hpp"
#include "mhdlab/spectral_ops.hpp"

namespace mhdlab {
namespace {

int axis3_band(const VectorField& f) {
    const Grid g = f.grid();
    int band = 0;
    for (int c = 0; c < 3; ++c)
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i3 = 0; i3 < g.n; ++i3)
                    if (f[c].c[g.flat(i1, i2, i3)] != 0.0)
                        band = std::max(band, std::abs(g.freq(i3)));
    return band;
}

}  // namespace

SpectralField make_stream(const StreamSpec& spec, Grid g) {
    if (!(spec.rho1 > 0.0) || !(spec.rho1 < spec.rho2))
        throw std::invalid_argument("make_stream: need 0 < rho1 < rho2");
    if (spec.rho2 > g.n / 3.0)
        throw std::invalid_argument("make_stream: annulus outside the dealias-safe band");
    SpectralField phi(g);
    if (spec.seed == 0) {
        // Deterministic profile: cos(k.x) on every integer shell |k| = rho
        // inside the annulus.
        bool populated = false;
        const int lo = static_cast<int>(std::ceil(spec.rho1));
        const int hi = static_cast<int>(std::floor(spec.rho2));
        for (int rho = lo; rho <= hi; ++rho) {
            const int rr = rho * rho;
            for (int k1 = -rho; k1 <= rho; ++k1)
                for (int k2 = -rho; k2 <= rho; ++k2)
                    for (int k3 = -rho; k3 <= rho; ++k3) {
                        if (k1 * k1 + k2 * k2 + k3 * k3 != rr) continue;
                        phi.at(k1, k2, k3) = 0.5 * spec.amplitude;
                        populated = true;
                    }
        }
        if (!populated)
            throw std::invalid_argument("make_stream: no integer shell inside the annulus");
        return phi;
    }
    phi = random_scalar_band(g, spec.rho1, spec.rho2, spec.seed);
    phi *= spec.amplitude;
    return phi;
}

VectorField stream_velocity(const SpectralField& phi) {
    VectorField u(phi.grid);
    u[0] = derivative(phi, 1);
    u[1] = derivative(phi, 0);
    u[1] *= -1.0;
    // u[2] stays zero
    return u;
}

DataPair large_data_pair(const SpectralField& phi, int m) {
    if (m < 1) throw std::invalid_argument("large_data_pair: m >= 1");
    const Grid g = phi.grid;
    DataPair pair;
    pair.m = m;
    pair.u0 = stream_velocity(phi);
    if (axis_band(pair.u0) > g.dealias_limit())
        throw std::invalid_argument("large_data_pair: stream band exceeds dealias mask");
    if (axis3_band(pair.u0) + m > g.dealias_limit())
        throw std::invalid_argument(
            "large_data_pair: band overflow, oscillation m pushes B0 outside the "
            "dealias-safe band");
    // B0 = u0 - cos(m x3) u0 realized as an exact spectral shift:
    // (cos(m x3) f)^(k) = (f^(k - m e3) + f^(k + m e3)) / 2.
    pair.B0 = VectorField(g);
    for (int c = 0; c < 3; ++c)
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i3 = 0; i3 < g.n; ++i3) {
                    const cplx v = pair.u0[c].c[g.flat(i1, i2, i3)];
                    if (v == 0.0) continue;
                    const int k3 = g.freq(i3);
                    pair.B0[c].c[g.flat(i1, i2, i3)] += v;
                    pair.B0[c].c[g.flat(i1, i2, g.index_of(k3 + m))] -= 0.5 * v;
                    pair.B0[c].c[g.flat(i1, i2, g.index_of(k3 - m))] -= 0.5 * v;
                }
    return pair;
}

std::pair<VectorField, VectorField> elsasser(const VectorField& u, const VectorField& B) {
    if (!(u.grid() == B.grid())) throw std::invalid_argument("elsasser: grid mismatch");
    return {u + B, u - B};
}

std::pair<VectorField, VectorField> elsasser_inverse(const VectorField& w_plus,
                                                     const VectorField& w_minus) {
    if (!(w_plus.grid() == w_minus.grid()))
        throw std::invalid_argument("elsasser_inverse: grid mismatch");
    return {0.5 * (w_plus + w_minus), 0.5 * (w_plus - w_minus)};
}

ScalingStudy scaling_study(const SpectralField& phi, double p, double r,
                           std::span<const int> ms, const DyadicPartition& part) {
    if (ms.size() < 3) throw std::invalid_argument("scaling_study: need >= 3 values of m");
    if (!std::is_sorted(ms.begin(), ms.end()) ||
        std::adjacent_find(ms.begin(), ms.end()) != ms.end())
        throw std::invalid_argument("scaling_study: m list must be strictly increasing");
    if (!(p >= 3.0)) throw std::invalid_argument("scaling_study: p >= 3 required");

    const BesovParams bp{3.0 / p - 1.0, p, r};
    ScalingStudy st;
    st.borderline = (p == 3.0);
    st.ms.assign(ms.begin(), ms.end());
    for (int m : ms) {
        DataPair pair = large_data_pair(phi, m);
        VectorField diff = pair.u0 - pair.B0;
        // Automatic per-block quadrature: the difference occupies a thin
        // annulus near |k| = m, so most blocks are empty and skipped.
        st.norms.push_back(besov_norm(diff, bp, part, 0));
        if (st.u0_norm == 0.0) st.u0_norm = besov_norm(pair.u0, bp, part, 0);
    }
    // Least squares on log norm vs log eps, eps = 1/m.
    const std::size_t npts = st.ms.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(npts), ys(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        xs[i] = -std::log(static_cast<double>(st.ms[i]));
        if (!(st.norms[i] > 0.0))
            throw std::invalid_argument("scaling_study: vanishing norm, cannot regress");
        ys[i] = std::log(st.norms[i]);
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double dn = npts * sxx - sx * sx;
    st.slope = (npts * sxy - sx * sy) / dn;
    st.intercept = (sy - st.slope * sx) / npts;
    for (std::size_t i = 0; i < npts; ++i)
        st.max_residual =
            std::max(st.max_residual, std::abs(ys[i] - st.intercept - st.slope * xs[i]));
    return st;
}

}  // namespace mhdlab
