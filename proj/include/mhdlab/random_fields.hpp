#pragma once

#include <cstdint>

#include "mhdlab/field.hpp"

namespace mhdlab {

/// Deterministic per-mode complex Gaussian, keyed by (seed, k). The same
/// (seed, k) yields the same draw on every grid size and platform, so
/// matched-seed fields on different grids share their common modes.
cplx mode_gaussian(std::uint64_t seed, int k1, int k2, int k3);

/// Real-valued random field with modes in the closed radial band
/// rmin <= |k| <= rmax (mean and Nyquist excluded). Coefficients are
/// conjugate-symmetric draws from mode_gaussian.
SpectralField random_scalar_band(Grid g, double rmin, double rmax, std::uint64_t seed);

/// Three independent components (component index salts the seed).
VectorField random_vector_band(Grid g, double rmin, double rmax, std::uint64_t seed);

/// Leray projection of random_vector_band; divergence-free, same band.
VectorField random_solenoidal_band(Grid g, double rmin, double rmax, std::uint64_t seed);

/// Scale a field so its L2 norm equals `target` (no-op on zero fields).
void normalize_l2(SpectralField& f, double target);
void normalize_l2(VectorField& f, double target);

}  // namespace mhdlab
