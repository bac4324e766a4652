#pragma once

#include "mhdlab/fft.hpp"

namespace mhdlab {

/// Partial derivative along axis (0,1,2): multiply by i*k_axis.
SpectralField derivative(const SpectralField& f, int axis);

/// Zero every mode with |k_m| > n/3 on any axis (2/3-rule mask).
void dealias(SpectralField& f);
void dealias(VectorField& f);

/// Zero the mean mode and the Nyquist rows. Every constructor of spectral
/// data funnels through this so the storage invariants hold.
void strip_mean_and_nyquist(SpectralField& f);
void strip_mean_and_nyquist(VectorField& f);

/// Leray projection onto divergence-free fields:
/// u_hat - k (k . u_hat) / |k|^2, identity on the mean mode.
VectorField leray_project(const VectorField& u);

SpectralField divergence(const VectorField& u);
VectorField curl(const VectorField& u);
VectorField gradient(const SpectralField& f);

/// Pointwise physical-space product, transformed back to coefficients.
/// No dealiasing; callers mask when they need a band-limited result.
SpectralField product(const SpectralField& a, const SpectralField& b);

/// Pseudo-spectral advection (u . grad) v: physical products of u_m with
/// d_m v_i, transformed back and dealiased.
VectorField advect(const VectorField& u, const VectorField& v);

/// max_x |u(x)| over components (physical-space sup of |u_m|).
double max_pointwise(const VectorField& u);

}  // namespace mhdlab
