#include "mhdlab/theorem_monitor.hpp"

#include <algorithm>
#include <cmath>

namespace mhdlab {

bool check_epsilon_r(double epsilon, double r) {
    if (!(r >= 1.0)) throw ConfigError("check_epsilon_r: r must be >= 1");
    if (r == 1.0) return 0.0 <= epsilon && epsilon < 1.0;
    if (r <= 2.0) return 0.0 < epsilon && epsilon < 1.0;
    if (r == inf) return false;
    return 1.0 - 2.0 / r <= epsilon && epsilon < 1.0;
}

double besov_condition_lhs(double norm_minus, double norm_plus, double nu_plus,
                           double nu_minus, double epsilon, double C) {
    const double e = 2.0 / (1.0 - epsilon);
    const double pre = norm_minus + (nu_minus / nu_plus) * (norm_plus + nu_minus);
    return pre * std::exp(C * std::pow(nu_plus, -e) * std::pow(nu_minus + norm_plus, e));
}

double chi_condition_lhs(double norm_minus, double norm_plus, double nu_plus,
                         double nu_minus, double C) {
    const double pre = norm_minus + C * (nu_minus / nu_plus) * (nu_minus + norm_plus);
    const double q = nu_minus + norm_plus;
    return pre * std::exp(C / (nu_plus * nu_plus) * q * q);
}

namespace {

ConditionReport make_besov_report(const std::string& id, double nm, double np, double nu_plus,
                                  double nu_minus, double epsilon, double C, double eta) {
    ConditionReport rep;
    rep.id = id;
    rep.ingredients = {{"norm_minus", nm}, {"norm_plus", np},   {"nu_plus", nu_plus},
                       {"nu_minus", nu_minus}, {"epsilon", epsilon}, {"C", C},
                       {"eta", eta}};
    rep.lhs = besov_condition_lhs(nm, np, nu_plus, nu_minus, epsilon, C);
    rep.threshold = eta * nu_plus;
    rep.verdict = rep.lhs < rep.threshold;
    rep.data_ratio = nm / nu_plus;
    rep.visc_ratio = nu_minus / nu_plus;
    rep.equal_viscosities = nu_minus == 0.0;
    return rep;
}

ConditionReport make_chi_report(const std::string& id, double nm, double np, double nu_plus,
                                double nu_minus, double C) {
    ConditionReport rep;
    rep.id = id;
    rep.ingredients = {{"norm_minus", nm},     {"norm_plus", np}, {"nu_plus", nu_plus},
                       {"nu_minus", nu_minus}, {"C", C}};
    rep.lhs = chi_condition_lhs(nm, np, nu_plus, nu_minus, C);
    rep.threshold = 2.0 * nu_plus;
    rep.verdict = rep.lhs < rep.threshold;
    rep.data_ratio = nm / nu_plus;
    rep.visc_ratio = nu_minus / nu_plus;
    rep.equal_viscosities = nu_minus == 0.0;
    return rep;
}

}  // namespace

std::array<ConditionReport, 2> condition_besov(const VectorField& u0, const VectorField& B0,
                                               double mu1, double mu2, const BesovParams& params,
                                               double epsilon, double C, double eta,
                                               const DyadicPartition& part, int oversample) {
    if (!(mu1 > 0.0) || !(mu2 > 0.0))
        throw ConfigError("condition_besov: viscosities must be positive");
    if (!check_epsilon_r(epsilon, params.r))
        throw ConfigError("condition_besov: inadmissible (epsilon, r) pair");
    const double nu_plus = 0.5 * (mu1 + mu2), nu_minus = 0.5 * (mu1 - mu2);
    BesovParams bp{3.0 / params.p - 1.0, params.p, params.r};
    const double np = besov_norm(u0 + B0, bp, part, oversample);
    const double nm = besov_norm(u0 - B0, bp, part, oversample);
    return {make_besov_report("besov_minus_small", nm, np, nu_plus, nu_minus, epsilon, C, eta),
            make_besov_report("besov_plus_small", np, nm, nu_plus, nu_minus, epsilon, C, eta)};
}

std::array<ConditionReport, 2> condition_chi(const VectorField& u0, const VectorField& B0,
                                             double mu1, double mu2, double C) {
    if (!(mu1 > 0.0) || !(mu2 > 0.0))
        throw ConfigError("condition_chi: viscosities must be positive");
    const double nu_plus = 0.5 * (mu1 + mu2), nu_minus = 0.5 * (mu1 - mu2);
    const double np = chi_norm(u0 + B0, -1.0);
    const double nm = chi_norm(u0 - B0, -1.0);
    return {make_chi_report("chi_minus_small", nm, np, nu_plus, nu_minus, C),
            make_chi_report("chi_plus_small", np, nm, nu_plus, nu_minus, C)};
}

double recompute_lhs(const ConditionReport& rep) {
    const auto& g = rep.ingredients;
    auto at = [&](const char* k) { return g.at(k); };
    if (rep.id.rfind("besov", 0) == 0)
        return besov_condition_lhs(at("norm_minus"), at("norm_plus"), at("nu_plus"),
                                   at("nu_minus"), at("epsilon"), at("C"));
    return chi_condition_lhs(at("norm_minus"), at("norm_plus"), at("nu_plus"), at("nu_minus"),
                             at("C"));
}

BootstrapTrace bootstrap_besov(const BlockNormHistory& hist, double r, double eps0,
                               double nu_plus) {
    if (hist.times.empty()) throw ConfigError("bootstrap_besov: missing history");
    const double s_low = 3.0 / hist.p - 1.0, s_high = 3.0 / hist.p + 1.0;
    const int nj = hist.blocks();
    std::vector<double> run_sup(nj, 0.0), run_int(nj, 0.0);

    BootstrapTrace tr;
    tr.threshold = eps0 * nu_plus;
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        for (int b = 0; b < nj; ++b) {
            run_sup[b] = std::max(run_sup[b], hist.values[i][b]);
            if (i > 0)
                run_int[b] += 0.5 * (hist.times[i] - hist.times[i - 1]) *
                              (hist.values[i - 1][b] + hist.values[i][b]);
        }
        const double q = block_lr(run_sup, hist.j_min, s_low, r) +
                         nu_plus * block_lr(run_int, hist.j_min, s_high, r);
        tr.times.push_back(hist.times[i]);
        tr.q.push_back(q);
        if (!tr.first_violation && q > tr.threshold) tr.first_violation = hist.times[i];
    }
    return tr;
}

BootstrapTrace bootstrap_chi(const std::vector<double>& times,
                             const std::vector<double>& chi_m1,
                             const std::vector<double>& chi_p1, double b, double nu_plus) {
    if (times.empty()) throw ConfigError("bootstrap_chi: missing history");
    if (times.size() != chi_m1.size() || times.size() != chi_p1.size())
        throw ConfigError("bootstrap_chi: series length mismatch");
    BootstrapTrace tr;
    tr.threshold = b;
    double sup = 0.0, integral = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        sup = std::max(sup, chi_m1[i]);
        if (i > 0) integral += 0.5 * (times[i] - times[i - 1]) * (chi_p1[i - 1] + chi_p1[i]);
        const double q = sup + nu_plus * integral;
        tr.times.push_back(times[i]);
        tr.q.push_back(q);
        if (!tr.first_violation && q > tr.threshold) tr.first_violation = times[i];
    }
    return tr;
}

double gronwall_envelope_besov(double norm_minus, double norm_plus, double nu_plus,
                               double nu_minus, double epsilon, double C) {
    return C * besov_condition_lhs(norm_minus, norm_plus, nu_plus, nu_minus, epsilon, C);
}

Step1Check step1_wplus_check(const BlockNormHistory& hist, double r, double c,
                             double nu_plus, double nu_minus) {
    if (hist.times.empty()) throw ConfigError("step1_wplus_check: missing history");
    const double s_low = 3.0 / hist.p - 1.0, s_high = 3.0 / hist.p + 1.0;
    const int nj = hist.blocks();
    std::vector<double> run_sup(nj, 0.0), run_int(nj, 0.0);

    Step1Check chk;
    chk.bound = 4.0 * block_lr(hist.values.front(), hist.j_min, s_low, r) + 2.0 * c * nu_minus;
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        for (int b = 0; b < nj; ++b) {
            run_sup[b] = std::max(run_sup[b], hist.values[i][b]);
            if (i > 0)
                run_int[b] += 0.5 * (hist.times[i] - hist.times[i - 1]) *
                              (hist.values[i - 1][b] + hist.values[i][b]);
        }
        const double v = block_lr(run_sup, hist.j_min, s_low, r) +
                         c * nu_plus * block_lr(run_int, hist.j_min, s_high, r);
        chk.times.push_back(hist.times[i]);
        chk.lhs.push_back(v);
        if (!chk.first_violation && v > chk.bound) chk.first_violation = hist.times[i];
    }
    chk.holds = !chk.first_violation.has_value();
    return chk;
}

bool chi_constants_feasible(double eps0, double C1, double C2) {
    const double l = 2.0 - eps0, m = 2.0 - C1;
    return C1 < 2.0 && 2.0 * l * l < C2 * m * m;
}

BInterval chi_b_interval(double eps0, double C1, double C2, double nu_plus) {
    BInterval bi;
    bi.lo = C1 < 2.0 ? 2.0 * (2.0 - eps0) * nu_plus / (2.0 - C1) : inf;
    bi.hi = std::sqrt(2.0 * C2) * nu_plus;
    bi.nonempty = bi.lo < bi.hi;
    return bi;
}

}  // namespace mhdlab
