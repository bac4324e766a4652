#include "mhdlab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

#include "mhdlab/spectral_ops.hpp"

namespace mhdlab {
namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = bump(t), b = bump(1.0 - t);
    return a / (a + b);
}

SpectralField apply_multiplier(const SpectralField& f, const std::vector<double>& m) {
    SpectralField out(f.grid);
    for (std::size_t i = 0; i < f.c.size(); ++i) out.c[i] = m[i] * f.c[i];
    return out;
}

}  // namespace

double chi_profile(double rho) {
    // Two-stage descent with a flat ledge across rho = 1. Dyadically aligned
    // radii (|xi| near 2^j) evaluate chi on the ledge, so the mass split
    // between blocks j-1 and j is exactly 50/50 and stays put under small
    // radial perturbations; without the ledge, block norms of near-octave
    // data pick up an m-dependent ramp factor.
    if (rho <= 0.75) return 1.0;
    if (rho >= 4.0 / 3.0) return 0.0;
    if (rho < 0.96) return 1.0 - 0.5 * ramp((rho - 0.75) / (0.96 - 0.75));
    if (rho <= 1.05) return 0.5;
    return 0.5 * (1.0 - ramp((rho - 1.05) / (4.0 / 3.0 - 1.05)));
}

double phi_profile(double rho) { return chi_profile(0.5 * rho) - chi_profile(rho); }

DyadicPartition DyadicPartition::make(Grid g) {
    // Largest j_max whose annulus still fits inside the lattice. Blocks
    // below j = -1 vanish on the integer lattice, so j_min = -2 is ample.
    const double top = std::sqrt(3.0) * (g.n / 2 - 1);
    int j_max = 0;
    while (8.0 / 3.0 * std::ldexp(1.0, j_max + 1) <= top) ++j_max;
    return make(g, -2, j_max);
}

DyadicPartition build_partition(Grid g, int j_min, int j_max) {
    return DyadicPartition::make(g, j_min, j_max);
}

DyadicPartition DyadicPartition::make(Grid g, int j_min, int j_max) {
    if (j_min > j_max) throw std::invalid_argument("DyadicPartition: j_min > j_max");
    if (j_min > 0 || j_max < 0)
        throw std::invalid_argument("DyadicPartition: need j_min <= 0 <= j_max");
    if (8.0 / 3.0 * std::ldexp(1.0, j_max) > std::sqrt(3.0) * (g.n / 2 - 1))
        throw std::invalid_argument("DyadicPartition: top annulus exceeds grid resolution");
    DyadicPartition p;
    p.grid_ = g;
    p.j_min_ = j_min;
    p.j_max_ = j_max;
    p.radius_.resize(g.size());
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                p.radius_[g.flat(i1, i2, i3)] = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
            }
    p.phi_.resize(j_max - j_min + 1);
    for (int j = j_min; j <= j_max; ++j) {
        auto& m = p.phi_[j - j_min];
        m.resize(g.size());
        const double scale = std::ldexp(1.0, -j);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double r = scale * p.radius_[i];
            m[i] = chi_profile(0.5 * r) - chi_profile(r);
        }
    }
    return p;
}

const std::vector<double>& DyadicPartition::multiplier(int j) const {
    if (!contains(j)) throw std::out_of_range("DyadicPartition: j outside range");
    return phi_[j - j_min_];
}

SpectralField block(const SpectralField& f, const DyadicPartition& part, int j) {
    if (!(f.grid == part.grid())) throw std::invalid_argument("block: grid mismatch");
    return apply_multiplier(f, part.multiplier(j));
}

VectorField block(const VectorField& f, const DyadicPartition& part, int j) {
    VectorField out(f.grid());
    for (int i = 0; i < 3; ++i) out[i] = block(f[i], part, j);
    return out;
}

SpectralField lowpass(const SpectralField& f, const DyadicPartition& part, int j) {
    if (!(f.grid == part.grid())) throw std::invalid_argument("lowpass: grid mismatch");
    SpectralField out(f.grid);
    const auto& rad = part.radius();
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        out.c[i] = chi_profile(scale * rad[i]) * f.c[i];
    return out;
}

VectorField lowpass(const VectorField& f, const DyadicPartition& part, int j) {
    VectorField out(f.grid());
    for (int i = 0; i < 3; ++i) out[i] = lowpass(f[i], part, j);
    return out;
}

SpectralField paraproduct(const SpectralField& u, const SpectralField& v,
                          const DyadicPartition& part) {
    SpectralField acc(u.grid);
    for (int j = part.j_min(); j <= part.j_max(); ++j)
        acc += product(lowpass(u, part, j - 1), block(v, part, j));
    return acc;
}

SpectralField remainder(const SpectralField& u, const SpectralField& v,
                        const DyadicPartition& part) {
    SpectralField acc(u.grid);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        SpectralField uj = block(u, part, j);
        for (int jp = std::max(j - 1, part.j_min()); jp <= std::min(j + 1, part.j_max()); ++jp)
            acc += product(uj, block(v, part, jp));
    }
    return acc;
}

}  // namespace mhdlab
