#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhdlab/errors.hpp"
#include "mhdlab/function_spaces.hpp"
#include "mhdlab/littlewood_paley.hpp"
#include "mhdlab/random_fields.hpp"
#include "mhdlab/spectral_ops.hpp"

namespace mhdlab {

/// Empirical ratio statistics for one inequality over a sample population.
/// Ratios are LHS / (RHS with the unknown constant stripped), so `max` is
/// the observed constant for upper bounds and `min` the observed constant
/// for lower bounds. Degenerate 0/0 samples are skipped, not recorded.
struct RatioStats {
    std::string id;
    int n = 0;
    int samples = 0;
    double min = 0.0, median = 0.0, max = 0.0;
    double bound_low = 0.0;
    double bound_high = 0.0;  // inf when only reported, not asserted
    bool verdict = false;
    std::vector<double> ratios;
};

/// Deterministic per-sample seed stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Two spectral-localization inequalities, sampled over random fields:
///  [0] derivative/integrability gain on ball-supported spectra:
///      |d^gamma f|_{L^q} <= C 2^{j(|gamma| + 3(1/p - 1/q))} |f|_{L^p},
///  [1] derivative inversion on annulus-supported spectra:
///      |f|_{L^p} <= C 2^{-j|gamma|} max_{|beta|=|gamma|} |d^beta f|_{L^p}.
/// |gamma| runs over {1, 2} and (p, q) over (2,2), (2,4), (2,inf), (4,inf).
std::array<RatioStats, 2> verify_bernstein(const DyadicPartition& part, int samples,
                                           std::uint64_t seed);

/// Lower dissipation bound for annulus-supported real fields:
///   c (R1^2/p^2) int |u|^p <= -(1/(p-1)) int (Lap u) |u|^{p-2} u.
/// Reports the empirical c (the min ratio). p must be even; at p = 2 the
/// Plancherel argument makes c >= p^2 = 4 exact, and that bound is asserted.
RatioStats verify_dissipation_bound(const DyadicPartition& part, int p, int samples,
                                    std::uint64_t seed);

/// Product estimate for solenoidal u:
///   |u.grad v|_{B^{3/p-1}_{p,r}} <= C (|u|_{lo} |v|_{hi} + |v|_{lo} |u|_{hi})
/// with lo = B^{3/p-1}_{p,r}, hi = B^{3/p+1}_{p,r}. Constant reported only.
RatioStats verify_skp1(const DyadicPartition& part, const BesovParams& params, int samples,
                       std::uint64_t seed);

/// One field pair sampled at a time instant, for trajectory estimates.
struct TrajectorySample {
    double t = 0.0;
    VectorField u, v;
};

/// Time-integrated product estimate along a sampled trajectory:
///   |u.grad v|_{L~1_t(B^{3/p-1})}
///     <= C |v|^{(1+eps)/2}_{L~1_t(B^{3/p+1})} |v|^{(1-eps)/2}_{L~1_{t,f}(B^{3/p-1})},
/// with time weight f(t) = |u(t)|^{2/(1-eps)} in B^{weight_s}_{p,weight_r}.
/// weight_s defaults (NaN) to 3/p - eps; the eps = 0 variant uses
/// weight_s = 3/p, weight_r = 1. Returns nullopt when the RHS vanishes.
/// Throws if the trajectory has fewer than 5 snapshots.
std::optional<double> verify_skp2(const std::vector<TrajectorySample>& traj,
                                  const DyadicPartition& part, const BesovParams& params,
                                  double eps,
                                  double weight_s = std::numeric_limits<double>::quiet_NaN(),
                                  double weight_r = inf, int oversample = 1);

/// Sharp product estimate in summed-coefficient norms, solenoidal u:
///   |u.grad v|_{chi^{-1}} <= |u|_{chi^0} |v|_{chi^0}.
/// The constant is exactly 1; max ratio <= 1 + 1e-10 is asserted.
RatioStats verify_chi_product(Grid g, int samples, std::uint64_t seed);

/// [0] norm-equivalence chain: B^{-1}_{inf,2} <= B^{-1}_{inf,1} <= blocksum,
///     with blocksum / chi^{-1} in [3/4, 8/3] (that ratio is the recorded one).
/// [1] interpolation |f|_{chi^0} <= sqrt(|f|_{chi^{-1}} |f|_{chi^1});
///     recorded ratio chi^0 / sqrt(chi^{-1} chi^1) <= 1.
std::array<RatioStats, 2> verify_chi_chain_and_interp(const DyadicPartition& part, int samples,
                                                      std::uint64_t seed);

}  // namespace mhdlab
