#pragma once

#include <vector>

#include "mhdlab/field.hpp"

namespace mhdlab {

/// Physical-space samples f(x_i) on the grid lattice, row-major like the
/// spectral layout. Values are real; transforms check conjugate symmetry.
struct PhysicalField {
    Grid grid;
    std::vector<double> v;

    PhysicalField() = default;
    explicit PhysicalField(Grid g) : grid(g), v(g.size()) {}

    double& at(int i1, int i2, int i3) { return v[grid.flat(i1, i2, i3)]; }
    double at(int i1, int i2, int i3) const { return v[grid.flat(i1, i2, i3)]; }
};

/// Forward transform with 1/n^3 normalization: samples -> coefficients.
SpectralField to_spectral(const PhysicalField& f);

/// Inverse transform: coefficients -> samples. Throws if the imaginary
/// residue exceeds round-off scale (signals a broken conjugate symmetry).
PhysicalField to_physical(const SpectralField& f);

/// Inverse transform onto a lattice refined by `factor` per axis
/// (coefficients zero-padded). Exact trigonometric interpolation; used for
/// L^p quadrature of |f|^p beyond the band the native lattice can resolve.
PhysicalField to_physical_oversampled(const SpectralField& f, int factor);

/// Raw complex inverse transform (no symmetry check); supports fields that
/// are legitimately complex-valued, e.g. single exponential modes.
std::vector<cplx> to_physical_complex(const SpectralField& f);
std::vector<cplx> to_physical_complex_oversampled(const SpectralField& f, int factor);

}  // namespace mhdlab
