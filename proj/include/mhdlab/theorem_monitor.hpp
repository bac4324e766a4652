#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhdlab/errors.hpp"
#include "mhdlab/field.hpp"
#include "mhdlab/function_spaces.hpp"
#include "mhdlab/littlewood_paley.hpp"

namespace mhdlab {

/// Outcome of one smallness condition evaluated on initial data.
///
/// `ingredients` logs every number the left-hand side is built from
/// (data norms, viscosities, constants), so the verdict can be re-derived
/// offline: recompute_lhs(report) reproduces `lhs` to 1e-12.
struct ConditionReport {
    std::string id;  // besov_minus_small, besov_plus_small, chi_minus_small, chi_plus_small
    std::map<std::string, double> ingredients;
    double lhs = 0.0;
    double threshold = 0.0;
    bool verdict = false;
    double data_ratio = 0.0;  // leading data norm / nu_plus
    double visc_ratio = 0.0;  // nu_minus / nu_plus
    bool equal_viscosities = false;
};

/// Running bootstrap quantity Q(t) against a constant threshold.
struct BootstrapTrace {
    std::vector<double> times;
    std::vector<double> q;
    double threshold = 0.0;
    std::optional<double> first_violation;  // earliest time with Q > threshold
};

/// Prefix check of the forced-component a-priori bound
/// sup-norm part + c nu_+ (time-integral part) <= 4 |W0^+| + 2 c nu_-.
struct Step1Check {
    std::vector<double> times;
    std::vector<double> lhs;  // prefix values, nondecreasing
    double bound = 0.0;
    bool holds = false;
    std::optional<double> first_violation;
};

/// Admissible b-range (lo, hi) for the chi-space bootstrap.
struct BInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool nonempty = false;
};

/// Admissibility of the (epsilon, r) exponent pair. Throws on r < 1.
bool check_epsilon_r(double epsilon, double r);

/// Scalar left-hand sides, exposed so synthetic inputs can be checked by hand.
/// Besov form: (nm + (vm/vp)(np + vm)) exp{C vp^{-2/(1-eps)} (vm + np)^{2/(1-eps)}}.
double besov_condition_lhs(double norm_minus, double norm_plus, double nu_plus,
                           double nu_minus, double epsilon, double C);
/// chi form: (nm + C (vm/vp)(vm + np)) exp{(C/vp^2)(vm + np)^2}.
double chi_condition_lhs(double norm_minus, double norm_plus, double nu_plus,
                         double nu_minus, double C);

/// Evaluates both smallness conditions (minus-small and its plus-small mirror)
/// on initial data in the critical Besov norm with index 3/p - 1 taken from
/// `params` (params.s is ignored; the exponent is tied to p). `oversample`
/// controls the L^p quadrature lattice.
std::array<ConditionReport, 2> condition_besov(const VectorField& u0, const VectorField& B0,
                                               double mu1, double mu2, const BesovParams& params,
                                               double epsilon, double C, double eta,
                                               const DyadicPartition& part, int oversample = 1);

/// Same pair of checks in the summed-coefficient norm chi^{-1}, threshold 2 nu_+.
std::array<ConditionReport, 2> condition_chi(const VectorField& u0, const VectorField& B0,
                                             double mu1, double mu2, double C);

/// Recomputes a report's LHS from its logged ingredients.
double recompute_lhs(const ConditionReport& rep);

/// Bootstrap quantity for the minus component from one block-norm history
/// a_j(t) = |block_j W^-(t)|_{L^p}:
///   Q(t) = l^r_j(2^{j(3/p-1)} sup_{[0,t]} a_j) + nu_+ l^r_j(2^{j(3/p+1)} int_0^t a_j).
/// Prefix sups and trapezoid integrals are maintained incrementally.
BootstrapTrace bootstrap_besov(const BlockNormHistory& hist, double r, double eps0,
                               double nu_plus);

/// chi-space variant from plain scalar series: Q(t) = sup chi^{-1} + nu_+ int chi^1.
BootstrapTrace bootstrap_chi(const std::vector<double>& times,
                             const std::vector<double>& chi_m1,
                             const std::vector<double>& chi_p1, double b, double nu_plus);

/// Constant upper envelope predicted for the minus component,
/// C * besov_condition_lhs(...). Emitted beside measured traces.
double gronwall_envelope_besov(double norm_minus, double norm_plus, double nu_plus,
                               double nu_minus, double epsilon, double C);

/// Prefix check of the plus-component bound from one block-norm history.
Step1Check step1_wplus_check(const BlockNormHistory& hist, double r, double c,
                             double nu_plus, double nu_minus);

/// Feasibility of the b-interval: 2 (2 - eps0)^2 < C2 (2 - C1)^2 with C1 < 2.
bool chi_constants_feasible(double eps0, double C1, double C2);

/// The interval (2(2-eps0) nu_+ / (2-C1), sqrt(2 C2) nu_+); lo = +inf if C1 >= 2.
BInterval chi_b_interval(double eps0, double C1, double C2, double nu_plus);

}  // namespace mhdlab
