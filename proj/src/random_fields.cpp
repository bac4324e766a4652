#include "mhdlab/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "mhdlab/spectral_ops.hpp"

namespace mhdlab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t mode_key(std::uint64_t seed, int k1, int k2, int k3) {
    std::uint64_t h = splitmix64(seed ^ 0x6d68646c61620000ull);
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(k1)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(k2)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(k3)));
    return h;
}

double unit_uniform(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

bool canonical(int k1, int k2, int k3) {
    if (k3 != 0) return k3 > 0;
    if (k2 != 0) return k2 > 0;
    return k1 > 0;
}

}  // namespace

cplx mode_gaussian(std::uint64_t seed, int k1, int k2, int k3) {
    const std::uint64_t h = mode_key(seed, k1, k2, k3);
    const double u1 = unit_uniform(h) + 0x1.0p-54;  // keep log argument positive
    const double u2 = unit_uniform(splitmix64(h));
    const double rad = std::sqrt(-std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return cplx(rad * std::cos(ang), rad * std::sin(ang));
}

SpectralField random_scalar_band(Grid g, double rmin, double rmax, std::uint64_t seed) {
    SpectralField f(g);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                if (g.nyquist(i1) || g.nyquist(i2) || g.nyquist(i3)) continue;
                const int k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                const double r = std::sqrt(double(k1) * k1 + double(k2) * k2 + double(k3) * k3);
                if (r < rmin || r > rmax || r == 0.0) continue;
                f.c[g.flat(i1, i2, i3)] = canonical(k1, k2, k3)
                                              ? mode_gaussian(seed, k1, k2, k3)
                                              : std::conj(mode_gaussian(seed, -k1, -k2, -k3));
            }
    return f;
}

VectorField random_vector_band(Grid g, double rmin, double rmax, std::uint64_t seed) {
    VectorField f(g);
    for (int m = 0; m < 3; ++m)
        f[m] = random_scalar_band(g, rmin, rmax, seed * 3u + static_cast<std::uint64_t>(m) + 1u);
    return f;
}

VectorField random_solenoidal_band(Grid g, double rmin, double rmax, std::uint64_t seed) {
    return leray_project(random_vector_band(g, rmin, rmax, seed));
}

void normalize_l2(SpectralField& f, double target) {
    const double n = l2_norm(f);
    if (n > 0.0) f *= target / n;
}

void normalize_l2(VectorField& f, double target) {
    const double n = l2_norm(f);
    if (n > 0.0) f *= target / n;
}

}  // namespace mhdlab
