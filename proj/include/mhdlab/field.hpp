#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "mhdlab/grid.hpp"

namespace mhdlab {

using cplx = std::complex<double>;

/// Scalar field stored as Fourier coefficients c_k of f(x) = sum_k c_k e^{ik.x}.
/// Coefficients live on the full cube in FFT index order (see Grid).
struct SpectralField {
    Grid grid;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(Grid g) : grid(g), c(g.size()) {}

    cplx& at(int k1, int k2, int k3) {
        return c[grid.flat(grid.index_of(k1), grid.index_of(k2), grid.index_of(k3))];
    }
    cplx at(int k1, int k2, int k3) const {
        return c[grid.flat(grid.index_of(k1), grid.index_of(k2), grid.index_of(k3))];
    }

    SpectralField& operator+=(const SpectralField& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& v : c) v *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
};

/// Three-component vector field; same storage convention per component.
struct VectorField {
    std::array<SpectralField, 3> comp;

    VectorField() = default;
    explicit VectorField(Grid g) : comp{SpectralField(g), SpectralField(g), SpectralField(g)} {}

    Grid grid() const { return comp[0].grid; }
    SpectralField& operator[](int i) { return comp[i]; }
    const SpectralField& operator[](int i) const { return comp[i]; }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comp[i] -= o.comp[i];
        return *this;
    }
    VectorField& operator*=(double a) {
        for (int i = 0; i < 3; ++i) comp[i] *= a;
        return *this;
    }

    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double s, VectorField a) { return a *= s; }
};

/// l2 norm of the coefficient array; equals the L2 norm under the
/// normalized measure (2pi)^{-3} dx by Parseval.
double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& f);

/// Largest |c_k| over the lattice (0 for the zero field).
double max_coefficient(const SpectralField& f);
double max_coefficient(const VectorField& f);

}  // namespace mhdlab
