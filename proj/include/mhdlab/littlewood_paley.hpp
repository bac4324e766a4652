#pragma once

#include <cmath>
#include <vector>

#include "mhdlab/field.hpp"

namespace mhdlab {

/// Smooth radial cutoff: 1 on [0, 3/4], 0 on [4/3, inf), monotone in between
/// (C-infinity bump ramps with a flat ledge chi = 1/2 across rho = 1, so
/// near-octave radii split 50/50 between adjacent blocks, stably).
/// chi(rho/2) - chi(rho) is then supported in the annulus [3/4, 8/3], and
/// dilates of it telescope to a partition of unity.
double chi_profile(double rho);
double phi_profile(double rho);

/// Dyadic multiplier family phi_j(xi) = phi(2^{-j}|xi|) tabulated on the
/// lattice. Valid ranges keep the top annulus fully resolved:
/// 8/3 * 2^{j_max} <= sqrt(3)(n/2 - 1) and j_min <= 0 <= j_max. The sum
/// of multipliers is 1 on the covered band [4/3 * 2^{j_min}, 3/4 *
/// 2^{j_max+1}]; the default range maximizes j_max, which reaches past
/// the per-axis dealias limit n/3 (cube corners beyond stay partial).
class DyadicPartition {
  public:
    static DyadicPartition make(Grid g);
    static DyadicPartition make(Grid g, int j_min, int j_max);

    Grid grid() const { return grid_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    bool contains(int j) const { return j >= j_min_ && j <= j_max_; }

    /// Radial interval where the multipliers sum to 1.
    double covered_min() const { return 4.0 / 3.0 * std::ldexp(1.0, j_min_); }
    double covered_max() const { return 0.75 * std::ldexp(1.0, j_max_ + 1); }

    /// phi_j values on the lattice, storage order matching SpectralField.
    const std::vector<double>& multiplier(int j) const;

    /// |xi| on the lattice (shared by block and lowpass application).
    const std::vector<double>& radius() const { return radius_; }

  private:
    Grid grid_;
    int j_min_ = 0, j_max_ = 0;
    std::vector<double> radius_;
    std::vector<std::vector<double>> phi_;
};

/// Free-function form of DyadicPartition::make.
DyadicPartition build_partition(Grid g, int j_min, int j_max);

/// Dyadic block Delta_j f = phi(2^{-j} D) f. Requires j in partition range.
SpectralField block(const SpectralField& f, const DyadicPartition& part, int j);
VectorField block(const VectorField& f, const DyadicPartition& part, int j);

/// Low-frequency cut S_j f = chi(2^{-j} D) f; any integer j.
SpectralField lowpass(const SpectralField& f, const DyadicPartition& part, int j);
VectorField lowpass(const VectorField& f, const DyadicPartition& part, int j);

/// Paraproduct T_u v = sum_j S_{j-1} u . Delta_j v (pointwise products in
/// physical space, no extra masking).
SpectralField paraproduct(const SpectralField& u, const SpectralField& v,
                          const DyadicPartition& part);

/// Remainder R(u, v) = sum_{|j-j'|<=1} Delta_j u . Delta_{j'} v, so that
/// u v = T_u v + T_v u + R(u, v) exactly on the lattice.
SpectralField remainder(const SpectralField& u, const SpectralField& v,
                        const DyadicPartition& part);

}  // namespace mhdlab
