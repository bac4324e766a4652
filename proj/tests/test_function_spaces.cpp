#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mhdlab/function_spaces.hpp"
#include "mhdlab/random_fields.hpp"

using namespace mhdlab;

namespace {

SpectralField cosine_mode(Grid g, int k1, int k2, int k3, double amp = 1.0) {
    SpectralField f(g);
    f.at(k1, k2, k3) = amp / 2.0;
    f.at(-k1, -k2, -k3) = amp / 2.0;
    return f;
}

}  // namespace

TEST_CASE("Lp hand values for a plain cosine") {
    const Grid g = Grid::make(16);
    const SpectralField f = cosine_mode(g, 1, 0, 0);
    // Under (2pi)^{-3} dx: |cos|^2 -> 1/2, |cos|^4 -> 3/8.
    CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(lp_norm(f, 4.0) == doctest::Approx(std::pow(3.0 / 8.0, 0.25)).epsilon(1e-14));
    CHECK(lp_norm(f, inf) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Lp of a single complex exponential is 1 for every p") {
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(2, 0, 0) = 1.0;  // e^{i 2 x1}, |f| = 1 pointwise
    for (double p : {2.0, 3.0, 4.0, 6.0, inf})
        CHECK(lp_norm(f, p) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("oversampling makes high-p quadrature exact") {
    const Grid g = Grid::make(8);
    const SpectralField f = cosine_mode(g, 2, 0, 0);
    // mean of cos^6 is 5/16; |f|^6 has band 12 > 8, so the native lattice
    // aliases and the refined one does not.
    const double exact = std::pow(5.0 / 16.0, 1.0 / 6.0);
    CHECK(exact_quadrature_factor(8, 6.0, 2) == 2);
    CHECK(lp_norm(f, 6.0, 2) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(std::abs(lp_norm(f, 6.0, 1) - exact) > 1e-3);
    // p = 2 and p = inf never need refinement.
    CHECK(exact_quadrature_factor(8, 2.0, 5) == 1);
    CHECK(exact_quadrature_factor(8, inf, 5) == 1);
    CHECK(exact_quadrature_factor(64, 6.0, 21) == 2);  // 128 > 126
    CHECK(exact_quadrature_factor(64, 6.0, 22) == 3);  // 128 < 132
}

TEST_CASE("Besov norm of one mode reduces to the partition sum") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);
    const SpectralField f = cosine_mode(g, 2, 0, 0);
    // |k| = 2 is split between blocks j = 0 and j = 1 whose weights sum
    // to 1, so (s = 0, r = 1) recovers the plain L2 norm.
    CHECK(besov_norm(f, {.s = 0.0, .p = 2.0, .r = 1.0}, part) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));

    const auto a = block_norms(f, 2.0, part);
    REQUIRE(static_cast<int>(a.size()) == part.j_max() - part.j_min() + 1);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const double aj = a[j - part.j_min()];
        if (j == 0 || j == 1)
            CHECK(aj > 0.0);
        else
            CHECK(aj == 0.0);
    }
    // r = inf picks the largest weighted block.
    const double want_inf = std::max(a[0 - part.j_min()], 2.0 * a[1 - part.j_min()]);
    CHECK(besov_norm(f, {.s = 1.0, .p = 2.0, .r = inf}, part) ==
          doctest::Approx(want_inf).epsilon(1e-13));
}

TEST_CASE("blocks never see the mean mode") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);
    SpectralField f = cosine_mode(g, 2, 0, 0);
    SpectralField shifted = f;
    shifted.at(0, 0, 0) = 7.0;
    const BesovParams bp{.s = -0.5, .p = 2.0, .r = 1.0};
    CHECK(besov_norm(shifted, bp, part) == doctest::Approx(besov_norm(f, bp, part)));
}

TEST_CASE("summed-coefficient norm hand values") {
    const Grid g = Grid::make(16);
    const SpectralField f = cosine_mode(g, 2, 0, 0);
    CHECK(chi_norm(f, -1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(chi_norm(f, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chi_norm(f, 1.0) == doctest::Approx(2.0).epsilon(1e-14));

    VectorField w(g);
    w[0] = f;
    CHECK(chi_norm(w, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    // Coefficientwise Euclidean magnitude across components.
    w[1] = f;
    CHECK(chi_norm(w, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("block-summed norm brackets the |k|^{-1} sum") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);

    // Single |k| = 2 mode: the bracket is computable by hand.
    const SpectralField f = cosine_mode(g, 2, 0, 0);
    const double want = 0.5 * (1.0 + chi_profile(1.0));
    CHECK(b111_norm(f, part) == doctest::Approx(want).epsilon(1e-13));

    const SpectralField r = random_scalar_band(g, 1.0, 10.0, 21);
    const double ratio = b111_norm(r, part) / chi_norm(r, -1.0);
    CHECK(ratio >= 0.75 - 1e-12);
    CHECK(ratio <= 8.0 / 3.0 + 1e-12);
}

TEST_CASE("automatic per-block quadrature matches explicit factors") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);
    const SpectralField f = random_scalar_band(g, 2.0, 6.0, 23);
    const double p = 6.0;
    const auto autod = block_norms(f, p, part, 0);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const SpectralField bf = block(f, part, j);
        const double want = max_coefficient(bf) == 0.0
                                ? 0.0
                                : lp_norm(bf, p, exact_quadrature_factor(g.n, p, axis_band(bf)));
        CHECK(autod[j - part.j_min()] == want);
    }
    // Empty blocks are exactly zero, no quadrature noise.
    CHECK(autod[part.j_max() - part.j_min()] == 0.0);
}

TEST_CASE("block_lr hand values") {
    const std::vector<double> a{1.0, 2.0};
    CHECK(block_lr(a, 0, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(block_lr(a, 0, 1.0, inf) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(block_lr(a, 0, 1.0, 2.0) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-15));
    CHECK(block_lr(a, -1, 1.0, 1.0) == doctest::Approx(0.5 + 2.0).epsilon(1e-15));
}

TEST_CASE("time-block aggregation closed forms") {
    BlockNormHistory h;
    h.j_min = 0;
    h.j_max = 1;
    h.p = 2.0;
    h.append(0.0, {1.0, 3.0});
    h.append(0.5, {1.0, 3.0});
    h.append(2.0, {1.0, 3.0});
    // Constant blocks: L1 in time = T a_j, sup in time = a_j.
    CHECK(chemin_lerner(h, 1.0, 1.0, 1.0) == doctest::Approx(2.0 * (1.0 + 6.0)).epsilon(1e-14));
    CHECK(chemin_lerner(h, inf, 1.0, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(chemin_lerner(h, 2.0, 0.0, inf) ==
          doctest::Approx(std::sqrt(9.0 * 2.0)).epsilon(1e-14));
}

TEST_CASE("time integration converges on a decaying block") {
    BlockNormHistory h;
    h.j_min = 0;
    h.j_max = 0;
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        h.append(t, {std::exp(-t)});
    }
    CHECK(chemin_lerner(h, 1.0, 0.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-7));
    CHECK(chemin_lerner(h, inf, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    // Weight e^{t} cancels the decay: the weighted integrand is constant 1.
    std::vector<double> w(h.times.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(h.times[i]);
    CHECK(chemin_lerner_weighted(h, w, 1.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("history and aggregation input validation") {
    BlockNormHistory h;
    h.j_min = 0;
    h.j_max = 1;
    CHECK_THROWS_AS(h.append(0.0, {1.0}), std::invalid_argument);  // block count
    h.append(0.0, {1.0, 2.0});
    CHECK_THROWS_AS(h.append(0.0, {1.0, 2.0}), std::invalid_argument);  // non-increasing t
    CHECK_THROWS_AS(h.append(1.0, {1.0, -2.0}), std::invalid_argument);  // negative norm

    CHECK_THROWS_AS((void)chemin_lerner(h, 1.0, 0.0, 1.0), std::invalid_argument);  // 1 snapshot
    CHECK_NOTHROW((void)chemin_lerner(h, inf, 0.0, 1.0));
    h.append(1.0, {1.0, 2.0});
    CHECK_THROWS_AS((void)chemin_lerner(h, 0.5, 0.0, 1.0), std::invalid_argument);  // r1 < 1
    const std::vector<double> short_w{1.0};
    CHECK_THROWS_AS((void)chemin_lerner_weighted(h, short_w, 1.0, 0.0, 1.0),
                    std::invalid_argument);

    BlockNormHistory empty;
    CHECK_THROWS_AS((void)chemin_lerner(empty, inf, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("scalar series helpers") {
    const std::vector<double> t{0.0, 1.0, 3.0};
    const std::vector<double> v{2.0, 4.0, 0.0};
    CHECK(series_trapezoid(t, v) == doctest::Approx(3.0 + 4.0).epsilon(1e-15));
    CHECK(series_sup(v) == 4.0);
}

TEST_CASE("lowpass aggregation is comparable to the block form at s < 0") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);
    const SpectralField f = random_scalar_band(g, 2.0, 6.0, 29);
    const BesovParams bp{.s = -1.0, .p = 2.0, .r = 1.0};
    const double ratio = lowpass_besov_norm(f, bp, part) / besov_norm(f, bp, part);
    CHECK(ratio > 0.25);
    CHECK(ratio < 4.0);
}

TEST_CASE("vector norms reduce to components") {
    const Grid g = Grid::make(32);
    const DyadicPartition part = DyadicPartition::make(g);
    VectorField w(g);
    w[1] = cosine_mode(g, 2, 0, 0);
    const BesovParams bp{.s = 0.0, .p = 2.0, .r = 1.0};
    CHECK(besov_norm(w, bp, part) == doctest::Approx(besov_norm(w[1], bp, part)));
    CHECK(lp_norm(w, 2.0) == doctest::Approx(lp_norm(w[1], 2.0)));
    CHECK(b111_norm(w, part) == doctest::Approx(b111_norm(w[1], part)));
}
