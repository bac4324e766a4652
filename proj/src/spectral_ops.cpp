#include "mhdlab/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdlab {

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis in {0,1,2}");
    const Grid g = f.grid;
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const int k[3] = {g.freq(i1), g.freq(i2), g.freq(i3)};
                out.c[g.flat(i1, i2, i3)] =
                    cplx(0.0, k[axis]) * f.c[g.flat(i1, i2, i3)];
            }
    return out;
}

void dealias(SpectralField& f) {
    const Grid g = f.grid;
    const int lim = g.dealias_limit();
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3)
                if (std::abs(g.freq(i1)) > lim || std::abs(g.freq(i2)) > lim ||
                    std::abs(g.freq(i3)) > lim)
                    f.c[g.flat(i1, i2, i3)] = 0.0;
}

void dealias(VectorField& f) {
    for (int i = 0; i < 3; ++i) dealias(f[i]);
}

void strip_mean_and_nyquist(SpectralField& f) {
    const Grid g = f.grid;
    f.c[0] = 0.0;
    const int ny = g.index_of(-g.n / 2);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            f.c[g.flat(ny, a, b)] = 0.0;
            f.c[g.flat(a, ny, b)] = 0.0;
            f.c[g.flat(a, b, ny)] = 0.0;
        }
}

void strip_mean_and_nyquist(VectorField& f) {
    for (int i = 0; i < 3; ++i) strip_mean_and_nyquist(f[i]);
}

VectorField leray_project(const VectorField& u) {
    const Grid g = u.grid();
    VectorField out(g);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const std::size_t idx = g.flat(i1, i2, i3);
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                const double k2n = k1 * k1 + k2 * k2 + k3 * k3;
                const cplx u1 = u[0].c[idx], u2 = u[1].c[idx], u3 = u[2].c[idx];
                if (k2n == 0.0) {
                    out[0].c[idx] = u1;
                    out[1].c[idx] = u2;
                    out[2].c[idx] = u3;
                    continue;
                }
                const cplx kd = (k1 * u1 + k2 * u2 + k3 * u3) / k2n;
                out[0].c[idx] = u1 - k1 * kd;
                out[1].c[idx] = u2 - k2 * kd;
                out[2].c[idx] = u3 - k3 * kd;
            }
    return out;
}

SpectralField divergence(const VectorField& u) {
    SpectralField out = derivative(u[0], 0);
    out += derivative(u[1], 1);
    out += derivative(u[2], 2);
    return out;
}

VectorField curl(const VectorField& u) {
    VectorField out(u.grid());
    out[0] = derivative(u[2], 1) - derivative(u[1], 2);
    out[1] = derivative(u[0], 2) - derivative(u[2], 0);
    out[2] = derivative(u[1], 0) - derivative(u[0], 1);
    return out;
}

VectorField gradient(const SpectralField& f) {
    VectorField out(f.grid);
    for (int a = 0; a < 3; ++a) out[a] = derivative(f, a);
    return out;
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("product: grid mismatch");
    PhysicalField pa = to_physical(a), pb = to_physical(b);
    for (std::size_t i = 0; i < pa.v.size(); ++i) pa.v[i] *= pb.v[i];
    return to_spectral(pa);
}

VectorField advect(const VectorField& u, const VectorField& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("advect: grid mismatch");
    const Grid g = u.grid();
    std::array<PhysicalField, 3> up;
    for (int m = 0; m < 3; ++m) up[m] = to_physical(u[m]);
    VectorField out(g);
    PhysicalField acc(g);
    for (int i = 0; i < 3; ++i) {
        std::fill(acc.v.begin(), acc.v.end(), 0.0);
        for (int m = 0; m < 3; ++m) {
            PhysicalField dv = to_physical(derivative(v[i], m));
            for (std::size_t x = 0; x < acc.v.size(); ++x) acc.v[x] += up[m].v[x] * dv.v[x];
        }
        out[i] = to_spectral(acc);
    }
    dealias(out);
    return out;
}

double max_pointwise(const VectorField& u) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
        PhysicalField p = to_physical(u[i]);
        for (double v : p.v) m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace mhdlab
