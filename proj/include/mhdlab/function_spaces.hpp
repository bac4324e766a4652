#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mhdlab/fft.hpp"
#include "mhdlab/littlewood_paley.hpp"

namespace mhdlab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Homogeneous Besov indices: weight 2^{js}, block integrability p,
/// summability r over blocks. p and r live in [1, inf].
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;
};

/// L^p norm under the normalized measure (2pi)^{-3} dx, evaluated by
/// lattice quadrature. p = 2 uses Parseval (exact); p = inf is the sample
/// max. `oversample` refines the quadrature lattice by that factor per
/// axis, which makes |f|^p quadrature exact once the refined lattice
/// resolves the band of |f|^p.
double lp_norm(const PhysicalField& f, double p);
double lp_norm(const SpectralField& f, double p, int oversample = 1);
double lp_norm(const VectorField& f, double p, int oversample = 1);

/// Largest per-axis wavenumber carried by coefficients above `tiny`.
int axis_band(const SpectralField& f, double tiny = 0.0);
int axis_band(const VectorField& f, double tiny = 0.0);

/// Largest |k| carried by coefficients above `tiny`; compare against
/// DyadicPartition::covered_max() to detect Besov-norm truncation.
double radial_band(const SpectralField& f, double tiny = 0.0);
double radial_band(const VectorField& f, double tiny = 0.0);

/// Smallest oversampling factor that makes L^p quadrature of a field with
/// per-axis band `band` exact on grid n (p rounded up; inf and p <= 2
/// need no refinement).
int exact_quadrature_factor(int n, double p, int band);

/// sum_j (2^{js} ||Delta_j f||_{L^p})^r over the partition range, ^{1/r}.
double besov_norm(const SpectralField& f, const BesovParams& bp,
                  const DyadicPartition& part, int oversample = 1);
double besov_norm(const VectorField& f, const BesovParams& bp,
                  const DyadicPartition& part, int oversample = 1);

/// l^r over j of 2^{js} ||S_j f||_{L^p}. For s < 0 this is comparable to
/// besov_norm (the low-pass tail telescopes into a geometric series).
double lowpass_besov_norm(const SpectralField& f, const BesovParams& bp,
                          const DyadicPartition& part, int oversample = 1);

/// Per-block L^p norms a_j = ||Delta_j f||_{L^p}, j over the partition.
/// oversample 0 = automatic: each block gets its exact quadrature factor
/// and empty blocks skip the transform.
std::vector<double> block_norms(const SpectralField& f, double p,
                                const DyadicPartition& part, int oversample = 1);
std::vector<double> block_norms(const VectorField& f, double p,
                                const DyadicPartition& part, int oversample = 1);

/// l^r over blocks of 2^{js} a_j for a block sequence indexed from j_min.
double block_lr(std::span<const double> a, int j_min, double s, double r);

/// Weighted coefficient sum  sum_{k != 0} |k|^s |c_k|  (vector fields take
/// the coefficientwise Euclidean magnitude).
double chi_norm(const SpectralField& f, double s);
double chi_norm(const VectorField& f, double s);

/// Block-summed variant  sum_j 2^{-j} sum_k phi_j(k) |c_k|; comparable to
/// chi_norm(f, -1) with ratio in [3/4, 8/3] by the annulus support.
double b111_norm(const SpectralField& f, const DyadicPartition& part);
double b111_norm(const VectorField& f, const DyadicPartition& part);

/// Per-block L^p norms sampled along a trajectory. One history serves every
/// (s, r) because the weights are applied at aggregation time.
struct BlockNormHistory {
    int j_min = 0, j_max = 0;
    double p = 2.0;
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // values[i][j - j_min]

    void append(double t, std::vector<double> a);
    std::size_t snapshots() const { return times.size(); }
    int blocks() const { return j_max - j_min + 1; }
};

/// Time-then-block aggregation: per block j take the L^{r1} norm in time
/// over the sampled window (trapezoid quadrature; r1 = inf is the max over
/// snapshots), then the weighted l^r norm 2^{js} over blocks.
double chemin_lerner(const BlockNormHistory& h, double r1, double s, double r);

/// Same with a time weight: the integrand is (w(t) a_j(t))^{r1}.
double chemin_lerner_weighted(const BlockNormHistory& h, std::span<const double> w,
                              double r1, double s, double r);

/// Scalar time-series helpers (trapezoid integral, running sup).
double series_trapezoid(std::span<const double> t, std::span<const double> v);
double series_sup(std::span<const double> v);

}  // namespace mhdlab
