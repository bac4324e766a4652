#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mhdlab/fft.hpp"
#include "mhdlab/random_fields.hpp"
#include "mhdlab/spectral_ops.hpp"

using namespace mhdlab;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
    return m;
}

double max_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) m = std::max(m, max_diff(a[c], b[c]));
    return m;
}

PhysicalField sampled(Grid g, double (*fn)(double, double, double)) {
    PhysicalField f(g);
    const double h = g.spacing();
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) f.at(i1, i2, i3) = fn(h * i1, h * i2, h * i3);
    return f;
}

}  // namespace

TEST_CASE("grid storage conventions") {
    const Grid g = Grid::make(16);
    CHECK(g.freq(0) == 0);
    CHECK(g.freq(1) == 1);
    CHECK(g.freq(8) == 8);
    CHECK(g.freq(9) == -7);
    CHECK(g.freq(15) == -1);
    CHECK(g.index_of(-1) == 15);
    CHECK(g.index_of(5) == 5);
    CHECK(g.nyquist(8));
    CHECK(!g.nyquist(7));
    CHECK(g.dealias_limit() == 5);
    CHECK(g.spacing() == doctest::Approx(2.0 * pi / 16).epsilon(1e-15));
    CHECK_THROWS_AS(Grid::make(12), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(4), std::invalid_argument);
    CHECK_THROWS_AS((void)g.index_of(8), std::out_of_range);
}

TEST_CASE("forward transform matches the direct DFT sum at n = 8") {
    const Grid g = Grid::make(8);
    PhysicalField f(g);
    // Deterministic quasi-random real samples.
    for (std::size_t i = 0; i < f.v.size(); ++i)
        f.v[i] = std::sin(0.37 * static_cast<double>(i) + 0.11) +
                 0.25 * std::cos(1.93 * static_cast<double>(i));
    const SpectralField got = to_spectral(f);

    const double h = g.spacing();
    double worst = 0.0;
    for (int k1 = -4; k1 < 4; ++k1)
        for (int k2 = -4; k2 < 4; ++k2)
            for (int k3 = -4; k3 < 4; ++k3) {
                cplx acc = 0.0;
                for (int i1 = 0; i1 < 8; ++i1)
                    for (int i2 = 0; i2 < 8; ++i2)
                        for (int i3 = 0; i3 < 8; ++i3) {
                            const double phase = h * (k1 * i1 + k2 * i2 + k3 * i3);
                            acc += f.at(i1, i2, i3) * std::exp(cplx(0.0, -phase));
                        }
                acc /= 512.0;
                const cplx stored = got.c[g.flat(g.index_of(k1), g.index_of(k2), g.index_of(k3))];
                worst = std::max(worst, std::abs(stored - acc));
            }
    CHECK(worst < 1e-13);
}

TEST_CASE("transform round trip is the identity") {
    const Grid g = Grid::make(16);
    const SpectralField f = random_scalar_band(g, 1.0, 5.0, 42);
    const SpectralField back = to_spectral(to_physical(f));
    CHECK(max_diff(f, back) < 1e-13);
}

TEST_CASE("single cosine mode samples exactly") {
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(2, 0, 0) = 0.5;
    f.at(-2, 0, 0) = 0.5;
    const PhysicalField p = to_physical(f);
    const double h = g.spacing();
    double worst = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        worst = std::max(worst, std::abs(p.at(i1, 3, 7) - std::cos(2.0 * h * i1)));
    CHECK(worst < 1e-14);

    const PhysicalField fine = to_physical_oversampled(f, 3);
    const Grid gf = fine.grid;
    const double hf = gf.spacing();
    worst = 0.0;
    for (int i1 = 0; i1 < gf.n; ++i1)
        worst = std::max(worst, std::abs(fine.at(i1, 0, 0) - std::cos(2.0 * hf * i1)));
    CHECK(worst < 1e-14);
}

TEST_CASE("to_physical rejects broken conjugate symmetry") {
    const Grid g = Grid::make(8);
    SpectralField f(g);
    f.at(1, 0, 0) = cplx(1.0, 0.0);  // no conjugate partner at -1
    CHECK_THROWS((void)to_physical(f));
    CHECK_NOTHROW((void)to_physical_complex(f));
}

TEST_CASE("derivative is multiplication by i k") {
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(2, 0, 0) = 0.5;
    f.at(-2, 0, 0) = 0.5;  // cos(2 x1)
    const SpectralField d1 = derivative(f, 0);
    const PhysicalField p = to_physical(d1);
    const double h = g.spacing();
    double worst = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        worst = std::max(worst, std::abs(p.at(i1, 5, 2) + 2.0 * std::sin(2.0 * h * i1)));
    CHECK(worst < 1e-14);
    CHECK(max_coefficient(derivative(f, 1)) == 0.0);
    CHECK(max_coefficient(derivative(f, 2)) == 0.0);
}

TEST_CASE("vector calculus identities on random fields") {
    const Grid g = Grid::make(16);
    const SpectralField f = random_scalar_band(g, 1.0, 4.0, 7);

    const VectorField gf = gradient(f);
    CHECK(max_coefficient(curl(gf)) < 1e-13);

    SpectralField lap(g);
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i3 = 0; i3 < g.n; ++i3) {
                const double k1 = g.freq(i1), k2 = g.freq(i2), k3 = g.freq(i3);
                lap.c[g.flat(i1, i2, i3)] =
                    -(k1 * k1 + k2 * k2 + k3 * k3) * f.c[g.flat(i1, i2, i3)];
            }
    CHECK(max_diff(divergence(gf), lap) < 1e-13);

    const VectorField u = random_solenoidal_band(g, 1.0, 4.0, 9);
    CHECK(max_coefficient(divergence(u)) < 1e-13);
    CHECK(max_coefficient(divergence(curl(random_vector_band(g, 1.0, 4.0, 11)))) < 1e-13);
}

TEST_CASE("Leray projection fixes solenoidal fields and kills gradients") {
    const Grid g = Grid::make(16);
    const VectorField u = random_solenoidal_band(g, 1.0, 4.0, 13);
    CHECK(max_diff(leray_project(u), u) < 1e-13);

    const VectorField gf = gradient(random_scalar_band(g, 1.0, 4.0, 17));
    CHECK(max_coefficient(leray_project(gf)) < 1e-13);

    const VectorField v = random_vector_band(g, 1.0, 4.0, 19);
    CHECK(max_coefficient(divergence(leray_project(v))) < 1e-13);
}

TEST_CASE("advection matches the symbolic oracle") {
    // u = (sin x3, 0, 0), v = (cos x1, 0, 0):
    // (u . grad) v = (-sin x3 sin x1, 0, 0).
    const Grid g = Grid::make(16);
    VectorField u(g), v(g);
    u[0] = to_spectral(sampled(g, [](double, double, double z) { return std::sin(z); }));
    v[0] = to_spectral(sampled(g, [](double x, double, double) { return std::cos(x); }));

    VectorField want(g);
    want[0] = to_spectral(
        sampled(g, [](double x, double, double z) { return -std::sin(z) * std::sin(x); }));
    dealias(want);

    CHECK(max_diff(advect(u, v), want) < 1e-14);
}

TEST_CASE("dealias and mean/Nyquist stripping") {
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(7, 0, 0) = 1.0;   // beyond n/3 = 5
    f.at(0, 0, 0) = 2.0;   // mean
    f.at(3, -2, 1) = 0.5;  // survivor
    f.c[g.flat(8, 0, 0)] = 1.0;  // Nyquist row

    SpectralField d = f;
    dealias(d);
    CHECK(d.at(7, 0, 0) == 0.0);
    CHECK(d.at(3, -2, 1) == cplx(0.5, 0.0));

    SpectralField s = f;
    strip_mean_and_nyquist(s);
    CHECK(s.at(0, 0, 0) == 0.0);
    CHECK(s.c[g.flat(8, 0, 0)] == 0.0);
    CHECK(s.at(3, -2, 1) == cplx(0.5, 0.0));
}

TEST_CASE("pointwise product of cosines") {
    // cos^2(x1) = 1/2 + cos(2 x1)/2: product() keeps the mean, no masking.
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(1, 0, 0) = 0.5;
    f.at(-1, 0, 0) = 0.5;
    const SpectralField q = product(f, f);
    CHECK(std::abs(q.at(0, 0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(q.at(2, 0, 0) - 0.25) < 1e-15);
    CHECK(std::abs(q.at(-2, 0, 0) - 0.25) < 1e-15);
    CHECK(std::abs(q.at(1, 0, 0)) < 1e-15);
}

TEST_CASE("max_pointwise hits the lattice sup") {
    const Grid g = Grid::make(16);
    VectorField u(g);
    u[0].at(1, 0, 0) = cplx(0.0, -0.5);
    u[0].at(-1, 0, 0) = cplx(0.0, 0.5);  // sin(x1), sup 1 at lattice point x = pi/2
    CHECK(max_pointwise(u) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("l2_norm is Parseval under the normalized measure") {
    const Grid g = Grid::make(16);
    SpectralField f(g);
    f.at(1, 2, 0) = cplx(0.3, 0.4);
    f.at(-1, -2, 0) = cplx(0.3, -0.4);
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(2.0 * 0.25)).epsilon(1e-14));
}
