#include "mhdlab/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdlab {
namespace {

void check_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
}

double lr_aggregate(const std::vector<double>& terms, double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("besov: r must be >= 1");
    if (r == inf) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms) s += std::pow(t, r);
    return std::pow(s, 1.0 / r);
}

double vector_magnitude_quadrature(const VectorField& f, double p, int oversample) {
    std::array<std::vector<cplx>, 3> ph;
    for (int m = 0; m < 3; ++m) ph[m] = to_physical_complex_oversampled(f[m], oversample);
    const std::size_t nn = ph[0].size();
    if (p == inf) {
        double mx = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            const double q =
                std::norm(ph[0][i]) + std::norm(ph[1][i]) + std::norm(ph[2][i]);
            mx = std::max(mx, q);
        }
        return std::sqrt(mx);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
        const double q = std::norm(ph[0][i]) + std::norm(ph[1][i]) + std::norm(ph[2][i]);
        s += std::pow(q, 0.5 * p);
    }
    return std::pow(s / static_cast<double>(nn), 1.0 / p);
}

}  // namespace

double lp_norm(const PhysicalField& f, double p) {
    check_p(p);
    if (p == inf) {
        double m = 0.0;
        for (double v : f.v) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : f.v) s += std::pow(std::abs(v), p);
    return std::pow(s / static_cast<double>(f.v.size()), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p, int oversample) {
    check_p(p);
    if (p == 2.0) return l2_norm(f);
    // Complex samples: |f(x)| is the right integrand for genuinely complex
    // fields (single exponential modes) and costs nothing for real ones.
    const std::vector<cplx> ph = to_physical_complex_oversampled(f, oversample);
    if (p == inf) {
        double m = 0.0;
        for (const auto& v : ph) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : ph) s += std::pow(std::abs(v), p);
    return std::pow(s / static_cast<double>(ph.size()), 1.0 / p);
}

double lp_norm(const VectorField& f, double p, int oversample) {
    check_p(p);
    if (p == 2.0) return l2_norm(f);
    return vector_magnitude_quadrature(f, p, oversample);
}

int axis_band(const SpectralField& f, double tiny) {
    const Grid g = f.grid;
    int band = 0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3)
                if (std::abs(f.c[g.flat(i1, i2, i3)]) > tiny) {
                    const int m = std::max({std::abs(g.freq(i1)), std::abs(g.freq(i2)),
                                            std::abs(g.freq(i3))});
                    band = std::max(band, m);
                }
    return band;
}

int axis_band(const VectorField& f, double tiny) {
    int band = 0;
    for (int i = 0; i < 3; ++i) band = std::max(band, axis_band(f[i], tiny));
    return band;
}

double radial_band(const SpectralField& f, double tiny) {
    const Grid g = f.grid;
    double band = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3)
                if (std::abs(f.c[g.flat(i1, i2, i3)]) > tiny) {
                    const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                    band = std::max(band, std::sqrt(k1 * k1 + k2 * k2 + k3 * k3));
                }
    return band;
}

double radial_band(const VectorField& f, double tiny) {
    double band = 0.0;
    for (int i = 0; i < 3; ++i) band = std::max(band, radial_band(f[i], tiny));
    return band;
}

int exact_quadrature_factor(int n, double p, int band) {
    if (p == inf || p <= 2.0) return 1;
    const double need = std::ceil(p) * band;  // band of |f|^p per axis
    int factor = 1;
    while (static_cast<double>(factor) * n <= need) ++factor;
    return factor;
}

namespace {

// oversample == 0: pick the exact per-block factor; zero blocks skip the
// transform entirely (band-limited data leaves most blocks empty).
template <class Field>
std::vector<double> block_norms_impl(const Field& f, double p, const DyadicPartition& part,
                                     int oversample) {
    std::vector<double> out;
    out.reserve(part.j_max() - part.j_min() + 1);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        Field bf = block(f, part, j);
        int os = oversample;
        if (os == 0) {
            const int band = axis_band(bf, 0.0);
            if (band == 0 && max_coefficient(bf) == 0.0) {
                out.push_back(0.0);
                continue;
            }
            os = exact_quadrature_factor(part.grid().n, p, band);
        }
        out.push_back(lp_norm(bf, p, os));
    }
    return out;
}

}  // namespace

std::vector<double> block_norms(const SpectralField& f, double p,
                                const DyadicPartition& part, int oversample) {
    return block_norms_impl(f, p, part, oversample);
}

std::vector<double> block_norms(const VectorField& f, double p,
                                const DyadicPartition& part, int oversample) {
    return block_norms_impl(f, p, part, oversample);
}

namespace {

template <class Field>
double besov_norm_impl(const Field& f, const BesovParams& bp, const DyadicPartition& part,
                       int oversample) {
    std::vector<double> a = block_norms(f, bp.p, part, oversample);
    std::vector<double> terms(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int j = part.j_min() + static_cast<int>(i);
        terms[i] = std::pow(2.0, bp.s * j) * a[i];
    }
    return lr_aggregate(terms, bp.r);
}

}  // namespace

double besov_norm(const SpectralField& f, const BesovParams& bp, const DyadicPartition& part,
                  int oversample) {
    return besov_norm_impl(f, bp, part, oversample);
}

double lowpass_besov_norm(const SpectralField& f, const BesovParams& bp,
                          const DyadicPartition& part, int oversample) {
    std::vector<double> terms;
    terms.reserve(part.j_max() - part.j_min() + 1);
    for (int j = part.j_min(); j <= part.j_max(); ++j)
        terms.push_back(std::pow(2.0, bp.s * j) * lp_norm(lowpass(f, part, j), bp.p, oversample));
    return lr_aggregate(terms, bp.r);
}

double besov_norm(const VectorField& f, const BesovParams& bp, const DyadicPartition& part,
                  int oversample) {
    return besov_norm_impl(f, bp, part, oversample);
}

double block_lr(std::span<const double> a, int j_min, double s, double r) {
    std::vector<double> terms(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        terms[i] = std::pow(2.0, s * (j_min + static_cast<int>(i))) * a[i];
    return lr_aggregate(terms, r);
}

double chi_norm(const SpectralField& f, double s) {
    const Grid g = f.grid;
    double acc = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                const double kk = k1 * k1 + k2 * k2 + k3 * k3;
                if (kk == 0.0) continue;
                const double a = std::abs(f.c[g.flat(i1, i2, i3)]);
                if (a != 0.0) acc += std::pow(kk, 0.5 * s) * a;
            }
    return acc;
}

double chi_norm(const VectorField& f, double s) {
    const Grid g = f.grid();
    double acc = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                const double kk = k1 * k1 + k2 * k2 + k3 * k3;
                if (kk == 0.0) continue;
                const std::size_t idx = g.flat(i1, i2, i3);
                const double a = std::sqrt(std::norm(f[0].c[idx]) + std::norm(f[1].c[idx]) +
                                           std::norm(f[2].c[idx]));
                if (a != 0.0) acc += std::pow(kk, 0.5 * s) * a;
            }
    return acc;
}

double b111_norm(const SpectralField& f, const DyadicPartition& part) {
    double acc = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const auto& m = part.multiplier(j);
        double s = 0.0;
        for (std::size_t i = 0; i < f.c.size(); ++i)
            if (m[i] != 0.0) s += m[i] * std::abs(f.c[i]);
        acc += std::ldexp(s, -j);
    }
    return acc;
}

double b111_norm(const VectorField& f, const DyadicPartition& part) {
    double acc = 0.0;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const auto& m = part.multiplier(j);
        double s = 0.0;
        for (std::size_t i = 0; i < f[0].c.size(); ++i)
            if (m[i] != 0.0)
                s += m[i] * std::sqrt(std::norm(f[0].c[i]) + std::norm(f[1].c[i]) +
                                      std::norm(f[2].c[i]));
        acc += std::ldexp(s, -j);
    }
    return acc;
}

void BlockNormHistory::append(double t, std::vector<double> a) {
    if (static_cast<int>(a.size()) != blocks())
        throw std::invalid_argument("BlockNormHistory: block count mismatch");
    if (!times.empty() && !(t > times.back()))
        throw std::invalid_argument("BlockNormHistory: times must strictly increase");
    for (double v : a)
        if (!(v >= 0.0)) throw std::invalid_argument("BlockNormHistory: negative block norm");
    times.push_back(t);
    values.push_back(std::move(a));
}

namespace {

double time_aggregate(const BlockNormHistory& h, std::span<const double> w, int jc,
                      double r1) {
    if (r1 == inf) {
        double m = 0.0;
        for (std::size_t i = 0; i < h.times.size(); ++i)
            m = std::max(m, (w.empty() ? 1.0 : w[i]) * h.values[i][jc]);
        return m;
    }
    if (h.times.size() < 2) return 0.0;
    double acc = 0.0;
    auto g = [&](std::size_t i) {
        return std::pow((w.empty() ? 1.0 : w[i]) * h.values[i][jc], r1);
    };
    for (std::size_t i = 0; i + 1 < h.times.size(); ++i)
        acc += 0.5 * (g(i) + g(i + 1)) * (h.times[i + 1] - h.times[i]);
    return std::pow(acc, 1.0 / r1);
}

double chemin_lerner_impl(const BlockNormHistory& h, std::span<const double> w, double r1,
                          double s, double r) {
    if (!(r1 >= 1.0)) throw std::invalid_argument("chemin_lerner: r1 must be >= 1");
    if (h.times.empty()) throw std::invalid_argument("chemin_lerner: empty history");
    if (r1 != inf && h.times.size() < 2)
        throw std::invalid_argument("chemin_lerner: finite r1 needs >= 2 snapshots");
    if (!w.empty() && w.size() != h.times.size())
        throw std::invalid_argument("chemin_lerner: weight length mismatch");
    for (double x : w)
        if (!(x >= 0.0)) throw std::invalid_argument("chemin_lerner: negative weight");
    std::vector<double> terms(h.blocks());
    for (int jc = 0; jc < h.blocks(); ++jc)
        terms[jc] = std::pow(2.0, s * (h.j_min + jc)) * time_aggregate(h, w, jc, r1);
    return lr_aggregate(terms, r);
}

}  // namespace

double chemin_lerner(const BlockNormHistory& h, double r1, double s, double r) {
    return chemin_lerner_impl(h, {}, r1, s, r);
}

double chemin_lerner_weighted(const BlockNormHistory& h, std::span<const double> w, double r1,
                              double s, double r) {
    return chemin_lerner_impl(h, w, r1, s, r);
}

double series_trapezoid(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size()) throw std::invalid_argument("series_trapezoid: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        acc += 0.5 * (v[i] + v[i + 1]) * (t[i + 1] - t[i]);
    return acc;
}

double series_sup(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

}  // namespace mhdlab
