#include "mhdlab/inequality_lab.hpp"

#include <algorithm>
#include <cmath>

namespace mhdlab {
namespace {

void fill_stats(RatioStats& st) {
    st.samples = static_cast<int>(st.ratios.size());
    if (st.ratios.empty()) return;
    std::vector<double> s = st.ratios;
    std::sort(s.begin(), s.end());
    st.min = s.front();
    st.max = s.back();
    const std::size_t m = s.size() / 2;
    st.median = s.size() % 2 ? s[m] : 0.5 * (s[m - 1] + s[m]);
}

SpectralField apply_gamma(const SpectralField& f, const std::array<int, 3>& gamma) {
    SpectralField out = f;
    for (int axis = 0; axis < 3; ++axis)
        for (int rep = 0; rep < gamma[axis]; ++rep) out = derivative(out, axis);
    return out;
}

int gamma_order(const std::array<int, 3>& gamma) { return gamma[0] + gamma[1] + gamma[2]; }

double mean_product(const std::vector<double>& a, const std::vector<double>& b, int pow_a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(a[i], pow_a) * b[i];
    return acc / static_cast<double>(a.size());
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::array<RatioStats, 2> verify_bernstein(const DyadicPartition& part, int samples,
                                           std::uint64_t seed) {
    const Grid g = part.grid();
    if (samples < 1) throw ConfigError("verify_bernstein: samples must be >= 1");

    static constexpr std::array<std::array<int, 3>, 3> first_order{
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    static constexpr std::array<std::array<int, 3>, 6> second_order{
        {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}};
    static constexpr std::array<std::pair<double, double>, 4> pq{
        {{2.0, 2.0}, {2.0, 4.0}, {2.0, inf}, {4.0, inf}}};
    // j caps keep the grid-independent sample stream shared across
    // resolutions: the top annulus must fit the coarsest partition used.
    static constexpr std::array<int, 4> js{0, 1, 2, 3};

    RatioStats ball, ann;
    ball.id = "bernstein_ball";
    ann.id = "bernstein_annulus";
    ball.n = ann.n = g.n;
    ball.bound_high = ann.bound_high = 16.0;

    for (int i = 0; i < samples; ++i) {
        const int j = js[i % js.size()];
        if (std::ldexp(8.0 / 3.0, j) > std::sqrt(3.0) * (g.n / 2 - 1))
            throw ConfigError("verify_bernstein: grid too coarse for the sample annuli");
        const std::uint64_t si = derive_seed(seed, static_cast<std::uint64_t>(i));
        const std::array<std::array<int, 3>, 2> gammas{
            first_order[i % first_order.size()], second_order[i % second_order.size()]};

        // (1) ball-supported spectra: derivatives and integrability cost powers of 2^j.
        SpectralField fb = random_scalar_band(g, 0.9, std::ldexp(4.0 / 3.0, j), si);
        const int fb_band = axis_band(fb);
        const double f2 = lp_norm(fb, 2.0);
        const double f4 = lp_norm(fb, 4.0, exact_quadrature_factor(g.n, 4.0, fb_band));
        if (f2 > 0.0) {
            for (const auto& gamma : gammas) {
                SpectralField df = apply_gamma(fb, gamma);
                const int order = gamma_order(gamma);
                const double d2 = lp_norm(df, 2.0);
                const double d4 = lp_norm(df, 4.0, exact_quadrature_factor(g.n, 4.0, fb_band));
                const double dinf = lp_norm(df, inf, 2);
                for (const auto& [p, q] : pq) {
                    const double num = q == 2.0 ? d2 : (q == 4.0 ? d4 : dinf);
                    const double den = p == 2.0 ? f2 : f4;
                    const double scale =
                        std::pow(2.0, j * (order + 3.0 * (1.0 / p - (q == inf ? 0.0 : 1.0 / q))));
                    // num == 0 means the derivative annihilated the band
                    // (mixed gammas on the |k| = 1 shell); no information.
                    if (den > 0.0 && num > 0.0) ball.ratios.push_back(num / (scale * den));
                }
            }
        }

        // (2) annulus-supported spectra: the top derivative norm controls f.
        SpectralField fa =
            random_scalar_band(g, std::ldexp(0.75, j), std::ldexp(8.0 / 3.0, j),
                               derive_seed(si, 1));
        const int fa_band = axis_band(fa);
        for (const auto& [p, order] : std::array<std::pair<double, int>, 3>{
                 {{2.0, 1}, {4.0, 1}, {2.0, 2}}}) {
            const int os = p == 2.0 ? 1 : exact_quadrature_factor(g.n, p, fa_band);
            const double fn = lp_norm(fa, p, os);
            if (fn == 0.0) continue;
            double sup = 0.0;
            if (order == 1)
                for (const auto& beta : first_order)
                    sup = std::max(sup, lp_norm(apply_gamma(fa, beta), p, os));
            else
                for (const auto& beta : second_order)
                    sup = std::max(sup, lp_norm(apply_gamma(fa, beta), p, os));
            if (sup > 0.0) ann.ratios.push_back(fn * std::pow(2.0, j * order) / sup);
        }
    }

    fill_stats(ball);
    fill_stats(ann);
    ball.verdict = !ball.ratios.empty() && std::isfinite(ball.max) && ball.max <= ball.bound_high;
    ann.verdict = !ann.ratios.empty() && std::isfinite(ann.max) && ann.max <= ann.bound_high;
    return {ball, ann};
}

RatioStats verify_dissipation_bound(const DyadicPartition& part, int p, int samples,
                                    std::uint64_t seed) {
    if (p < 2 || p % 2 != 0)
        throw ConfigError("verify_dissipation_bound: p must be a positive even integer");
    const Grid g = part.grid();

    std::vector<int> js;
    for (int j = std::max(part.j_min(), -1); j <= part.j_max(); ++j)
        if (std::ldexp(8.0 / 3.0, j) <= g.dealias_limit()) js.push_back(j);
    if (js.empty()) throw ConfigError("verify_dissipation_bound: no annulus fits the grid");

    RatioStats st;
    st.id = "dissipation_p" + std::to_string(p);
    st.n = g.n;
    st.bound_low = p == 2 ? 4.0 : 0.0;

    for (int i = 0; i < samples; ++i) {
        const int j = js[i % js.size()];
        const double r1 = std::ldexp(0.75, j), r2 = std::ldexp(8.0 / 3.0, j);
        SpectralField u = random_scalar_band(g, r1, r2, derive_seed(seed, i));
        const int factor = exact_quadrature_factor(g.n, p, axis_band(u));

        SpectralField lap = u;
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i3 = 0; i3 < g.n; ++i3) {
                    const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                    lap.c[g.flat(i1, i2, i3)] *= -(k1 * k1 + k2 * k2 + k3 * k3);
                }

        const std::vector<double> us = to_physical_oversampled(u, factor).v;
        const std::vector<double> ls = to_physical_oversampled(lap, factor).v;
        const double up = mean_product(us, us, p - 1);  // int |u|^p, p even
        if (up <= 0.0) continue;
        const double rhs = -mean_product(us, ls, p - 1) / (p - 1.0);
        st.ratios.push_back(rhs / (r1 * r1 / (p * p) * up));
    }

    fill_stats(st);
    st.verdict = !st.ratios.empty() && std::isfinite(st.max) &&
                 (p == 2 ? st.min >= 4.0 - 1e-10 : st.min > 0.0);
    return st;
}

RatioStats verify_skp1(const DyadicPartition& part, const BesovParams& params, int samples,
                       std::uint64_t seed) {
    const Grid g = part.grid();
    const double p = params.p, r = params.r;
    const double band = std::max(2, g.n / 8);

    RatioStats st;
    st.id = "product_low_high";
    st.n = g.n;
    st.bound_high = inf;

    const double s_lo = 3.0 / p - 1.0, s_hi = 3.0 / p + 1.0;
    const int os = exact_quadrature_factor(g.n, p, 2 * static_cast<int>(band));
    for (int i = 0; i < samples; ++i) {
        VectorField u = random_solenoidal_band(g, 1.0, band, derive_seed(seed, 2 * i));
        VectorField v = random_vector_band(g, 1.0, band, derive_seed(seed, 2 * i + 1));
        const std::vector<double> au = block_norms(u, p, part, os);
        const std::vector<double> av = block_norms(v, p, part, os);
        const std::vector<double> aw = block_norms(advect(u, v), p, part, os);
        const double lhs = block_lr(aw, part.j_min(), s_lo, r);
        const double rhs = block_lr(au, part.j_min(), s_lo, r) * block_lr(av, part.j_min(), s_hi, r) +
                           block_lr(av, part.j_min(), s_lo, r) * block_lr(au, part.j_min(), s_hi, r);
        if (rhs > 0.0) st.ratios.push_back(lhs / rhs);
    }

    fill_stats(st);
    st.verdict = !st.ratios.empty() && std::isfinite(st.max);
    return st;
}

std::optional<double> verify_skp2(const std::vector<TrajectorySample>& traj,
                                  const DyadicPartition& part, const BesovParams& params,
                                  double eps, double weight_s, double weight_r, int oversample) {
    if (traj.size() < 5) throw ConfigError("verify_skp2: needs at least 5 snapshots");
    if (!(eps >= 0.0 && eps < 1.0)) throw ConfigError("verify_skp2: eps must be in [0, 1)");
    const double p = params.p, r = params.r;
    if (std::isnan(weight_s)) weight_s = 3.0 / p - eps;

    BlockNormHistory hw, hv;
    hw.j_min = hv.j_min = part.j_min();
    hw.j_max = hv.j_max = part.j_max();
    hw.p = hv.p = p;
    std::vector<double> weight;
    for (const auto& snap : traj) {
        hw.append(snap.t, block_norms(advect(snap.u, snap.v), p, part, oversample));
        hv.append(snap.t, block_norms(snap.v, p, part, oversample));
        const double wn =
            besov_norm(snap.u, BesovParams{weight_s, p, weight_r}, part, oversample);
        weight.push_back(std::pow(wn, 2.0 / (1.0 - eps)));
    }

    const double lhs = chemin_lerner(hw, 1.0, 3.0 / p - 1.0, r);
    const double rhs =
        std::pow(chemin_lerner(hv, 1.0, 3.0 / p + 1.0, r), 0.5 * (1.0 + eps)) *
        std::pow(chemin_lerner_weighted(hv, weight, 1.0, 3.0 / p - 1.0, r), 0.5 * (1.0 - eps));
    if (rhs == 0.0) return std::nullopt;
    return lhs / rhs;
}

RatioStats verify_chi_product(Grid g, int samples, std::uint64_t seed) {
    RatioStats st;
    st.id = "chi_product";
    st.n = g.n;
    st.bound_high = 1.0;
    const double band = std::max(2, g.n / 6);

    for (int i = 0; i < samples; ++i) {
        VectorField u = random_solenoidal_band(g, 1.0, band, derive_seed(seed, 2 * i));
        VectorField v = random_vector_band(g, 1.0, band, derive_seed(seed, 2 * i + 1));
        const double rhs = chi_norm(u, 0.0) * chi_norm(v, 0.0);
        if (rhs == 0.0) continue;
        st.ratios.push_back(chi_norm(advect(u, v), -1.0) / rhs);
    }

    fill_stats(st);
    st.verdict = !st.ratios.empty() && st.max <= 1.0 + 1e-10;
    return st;
}

std::array<RatioStats, 2> verify_chi_chain_and_interp(const DyadicPartition& part, int samples,
                                                      std::uint64_t seed) {
    const Grid g = part.grid();
    RatioStats chain, interp;
    chain.id = "chi_chain_equivalence";
    interp.id = "chi_interpolation";
    chain.n = interp.n = g.n;
    chain.bound_low = 0.75;
    chain.bound_high = 8.0 / 3.0;
    interp.bound_high = 1.0;

    bool ordered = true;
    for (int i = 0; i < samples; ++i) {
        SpectralField f = random_scalar_band(g, 1.0, g.dealias_limit(), derive_seed(seed, i));
        const double binf2 = besov_norm(f, BesovParams{-1.0, inf, 2.0}, part);
        const double binf1 = besov_norm(f, BesovParams{-1.0, inf, 1.0}, part);
        const double bsum = b111_norm(f, part);
        const double cm1 = chi_norm(f, -1.0);
        ordered = ordered && binf2 <= binf1 * (1.0 + 1e-12) && binf1 <= bsum * (1.0 + 1e-12);
        if (cm1 > 0.0) chain.ratios.push_back(bsum / cm1);

        const double c0 = chi_norm(f, 0.0);
        const double denom = std::sqrt(cm1 * chi_norm(f, 1.0));
        if (denom > 0.0) interp.ratios.push_back(c0 / denom);
    }

    fill_stats(chain);
    fill_stats(interp);
    chain.verdict = ordered && !chain.ratios.empty() &&
                    chain.min >= chain.bound_low - 1e-12 && chain.max <= chain.bound_high + 1e-12;
    interp.verdict = !interp.ratios.empty() && interp.max <= 1.0 + 1e-12;
    return {chain, interp};
}

}  // namespace mhdlab
