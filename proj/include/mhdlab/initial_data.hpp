#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mhdlab/function_spaces.hpp"

namespace mhdlab {

/// Recipe for the scalar stream function: Fourier support confined to the
/// radial annulus [rho1, rho2]. seed == 0 selects the deterministic profile
/// (every integer shell inside the annulus, fixed real phases); a nonzero
/// seed draws mode_gaussian coefficients on the whole annulus.
struct StreamSpec {
    double rho1 = 1.5;
    double rho2 = 2.5;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
};

SpectralField make_stream(const StreamSpec& spec, Grid g);

/// u0 = (d2 phi, -d1 phi, 0): divergence-free for any scalar phi.
VectorField stream_velocity(const SpectralField& phi);

/// The oscillatory large-data pair: u0 as above and
/// B0 = (1 - cos(m x3)) u0, so u0 - B0 = cos(m x3) u0.
struct DataPair {
    VectorField u0, B0;
    int m = 0;
};

/// Requires m >= 1 and the x3-band of B0 (osc frequency m plus phi's own
/// x3-band) to stay inside the dealias mask; throws on band overflow.
DataPair large_data_pair(const SpectralField& phi, int m);

/// W+ = u + B, W- = u - B and the inverse map.
std::pair<VectorField, VectorField> elsasser(const VectorField& u, const VectorField& B);
std::pair<VectorField, VectorField> elsasser_inverse(const VectorField& w_plus,
                                                     const VectorField& w_minus);

/// Log-log regression of ||u0 - B0|| in the Besov space with s = 3/p - 1
/// against eps = 1/m. The expected slope is 1 - 3/p; p = 3 is the
/// borderline exponent where the norm stops vanishing.
struct ScalingStudy {
    std::vector<int> ms;
    std::vector<double> norms;  // ||u0 - B0|| per m
    double u0_norm = 0.0;       // m-independent reference
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;  // max |log norm - fit| over points
    bool borderline = false;    // p == 3
};

ScalingStudy scaling_study(const SpectralField& phi, double p, double r,
                           std::span<const int> ms, const DyadicPartition& part);

}  // namespace mhdlab
