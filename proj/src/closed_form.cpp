#include "relkrr/closed_form.hpp"

#include <cmath>

namespace relkrr {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Arguments above this switch the rank formulas to log-space; sinh/cosh
// overflow double precision near 710.
constexpr double kLogSpaceThreshold = 350.0;

// log(sinh(x)) for x > 0.
double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - kLn2; }

// log(cosh(x)) for x >= 0.
double log_cosh(double x) { return x + std::log1p(std::exp(-2.0 * x)) - kLn2; }

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// value = sign * exp(lg); sign = 0 encodes exact zero.
struct SignedLog {
    double lg;
    int sign;
};

SignedLog slog_sub(double lg_a, double lg_b) {
    if (lg_a == lg_b) return {0.0, 0};
    if (lg_a > lg_b) return {lg_a + std::log1p(-std::exp(lg_b - lg_a)), +1};
    return {lg_b + std::log1p(-std::exp(lg_a - lg_b)), -1};
}

double log_dtilde(int n, double lam, int i, int j) {
    int lo = std::min(i, j), hi = std::max(i, j);
    return log_cosh((lo - 0.5) * lam) + log_cosh((n - hi + 0.5) * lam);
}

double log_g_factor(int n, int p, int q, double lam) {
    double half = (p + q - 1) / 2.0;
    return log_add(log_cosh((q - 0.5) * lam) + log_sinh((n - half) * lam),
                   log_cosh((n - p + 0.5) * lam) + log_sinh(half * lam));
}

void check_exception_indices(int n, int p, int q) {
    if (!(1 <= q && q < p && p <= n && p - q >= 2))
        throw std::invalid_argument("closed form: invalid exception indices");
}

}  // namespace

void ClosedFormParams::validate() const {
    spec.validate();
    if (spec.kind == TaskKind::TP)
        throw std::invalid_argument("closed form: tp has no closed-form solution");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("closed form: alpha must be in [0,1]");
    if (creg_inv < 0.0)
        throw std::invalid_argument("closed form: creg_inv must be >= 0");
}

double lambda_of(double alpha, double creg_inv) {
    if (alpha >= 1.0) throw std::domain_error("lambda_of: requires alpha < 1");
    if (alpha < 0.0 || creg_inv < 0.0)
        throw std::domain_error("lambda_of: alpha in [0,1), creg_inv >= 0");
    double arg = (1.0 + creg_inv) / (1.0 - alpha);
    if (arg == 1.0) throw DegenerateError("lambda_of: arccosh(1) = 0");
    return std::acosh(arg);
}

double rank_ti(int n, double lam, int j) {
    if (!(lam > 0.0)) throw std::domain_error("rank_ti: lambda must be > 0");
    if (j < 1 || j > n) throw std::invalid_argument("rank_ti: j out of range");
    double mid = (n + 1) / 2.0;
    if (mid * lam < kLogSpaceThreshold) {
        return std::sinh((mid - j) * lam) /
               (std::sinh(mid * lam) - std::sinh((mid - 1.0) * lam));
    }
    // sinh(m*lam) - sinh((m-1)*lam) = 2 cosh(n*lam/2) sinh(lam/2)
    if (j * 2 == n + 1) return 0.0;
    double num = log_sinh(std::abs(mid - j) * lam);
    double den = kLn2 + log_cosh(n * lam / 2.0) + log_sinh(lam / 2.0);
    double v = std::exp(num - den);
    return mid > j ? v : -v;
}

double dtilde(int n, double lam, int i, int j) {
    if (!(lam > 0.0)) throw std::domain_error("dtilde: lambda must be > 0");
    int lo = std::min(i, j), hi = std::max(i, j);
    return std::cosh((lo - 0.5) * lam) * std::cosh((n - hi + 0.5) * lam);
}

double g_factor(int n, int p, int q, double lam) {
    check_exception_indices(n, p, q);
    if (!(lam > 0.0)) throw std::domain_error("g_factor: lambda must be > 0");
    double half = (p + q - 1) / 2.0;
    return std::cosh((q - 0.5) * lam) * std::sinh((n - half) * lam) +
           std::cosh((n - p + 0.5) * lam) * std::sinh(half * lam);
}

double rank_pert(int n, int p, int q, double lam, int j) {
    check_exception_indices(n, p, q);
    if (!(lam > 0.0)) throw std::domain_error("rank_pert: lambda must be > 0");
    if (j < 1 || j > n) throw std::invalid_argument("rank_pert: j out of range");

    double gap = 1.0 - rank_ti(n, lam, p) + rank_ti(n, lam, q);
    if ((n + 1) * lam < kLogSpaceThreshold) {
        double num = gap * (dtilde(n, lam, j, p) - dtilde(n, lam, j, q));
        double den = std::sinh(lam) * std::sinh(n * lam) -
                     2.0 * std::sinh((q - p) / 2.0 * lam) * g_factor(n, p, q, lam);
        return num / den;
    }
    // Log-space: both denominator terms are positive (q < p flips the sign of
    // the sinh((q-p)/2 lam) factor), the Dtilde difference carries the sign.
    SignedLog diff = slog_sub(log_dtilde(n, lam, j, p), log_dtilde(n, lam, j, q));
    if (diff.sign == 0) return 0.0;
    double log_den = log_add(log_sinh(lam) + log_sinh(n * lam),
                             kLn2 + log_sinh((p - q) / 2.0 * lam) +
                                 log_g_factor(n, p, q, lam));
    return diff.sign * gap * std::exp(diff.lg - log_den);
}

double memorization_coeff(double alpha, double creg_inv) {
    if (alpha < 0.0 || alpha > 1.0 || creg_inv < 0.0)
        throw std::domain_error("memorization_coeff: alpha in [0,1], creg_inv >= 0");
    if (alpha == 0.0 && creg_inv == 0.0)
        throw DegenerateError("memorization_coeff: alpha = creg_inv = 0");
    return alpha / (alpha + creg_inv);
}

double hbar(int n, int p, int q, double alpha, double creg_inv) {
    check_exception_indices(n, p, q);
    double lam = lambda_of(alpha, creg_inv);
    double delta_o = (1.0 - alpha) / 2.0;  // canonical gauge, delta_s = 1
    double z = 1.0 + creg_inv;
    double gap = 1.0 - rank_ti(n, lam, p) + rank_ti(n, lam, q);
    double correction;  // sinh((p-q)/2 lam) G / sinh(n lam), positive
    if ((n + 1) * lam < kLogSpaceThreshold) {
        correction =
            std::sinh((p - q) / 2.0 * lam) * g_factor(n, p, q, lam) / std::sinh(n * lam);
    } else {
        correction = std::exp(log_sinh((p - q) / 2.0 * lam) +
                              log_g_factor(n, p, q, lam) - log_sinh(n * lam));
    }
    double den = (z - 2.0 * delta_o) + 4.0 * delta_o * std::tanh(lam / 2.0) * correction;
    return gap / den;
}

double tridiag_inverse_entry(int m, double a, double b, int i, int j) {
    if (i < 1 || i > m || j < 1 || j > m)
        throw std::invalid_argument("tridiag_inverse_entry: index out of range");
    double ratio = -a / (2.0 * b);
    if (ratio == 1.0) throw DegenerateError("tridiag_inverse_entry: a/b = -2");
    if (ratio < 1.0) throw std::domain_error("tridiag_inverse_entry: requires a/b < -2");
    double lam = std::acosh(ratio);
    return -(std::cosh((m + 1 - std::abs(j - i)) * lam) -
             std::cosh((m + 1 - i - j) * lam)) /
           (2.0 * b * std::sinh(lam) * std::sinh((m + 1) * lam));
}

RankProfile rank_profile(const ClosedFormParams& cfp) {
    cfp.validate();
    const int n = cfp.spec.n;
    RankProfile prof;
    prof.n = n;
    prof.r.assign(n, 0.0);
    prof.r_ti.assign(n, 0.0);
    prof.r_pert.assign(n, 0.0);
    prof.reg_factor = 1.0 + cfp.creg_inv;  // canonical delta_s = 1

    if (cfp.alpha == 1.0) {
        // Fully conjunctive: no ranking system, pure memorization.
        prof.m = 1.0 / (1.0 + cfp.creg_inv);
        prof.hbar = prof.m;
        return prof;
    }

    prof.lambda = lambda_of(cfp.alpha, cfp.creg_inv);
    prof.m = memorization_coeff(cfp.alpha, cfp.creg_inv);
    for (int j = 1; j <= n; ++j) prof.r_ti[j - 1] = rank_ti(n, prof.lambda, j);
    if (cfp.spec.kind == TaskKind::TIExc) {
        for (int j = 1; j <= n; ++j)
            prof.r_pert[j - 1] = rank_pert(n, cfp.spec.p, cfp.spec.q, prof.lambda, j);
        prof.g = g_factor(n, cfp.spec.p, cfp.spec.q, prof.lambda);
        prof.hbar = hbar(n, cfp.spec.p, cfp.spec.q, cfp.alpha, cfp.creg_inv);
    }
    for (int j = 0; j < n; ++j) prof.r[j] = prof.r_ti[j] + prof.r_pert[j];
    return prof;
}

double predict_from_profile(const RankProfile& profile, const TaskSpec& spec,
                            ItemPair pair) {
    validate_pair(spec, pair);
    double rank_diff = profile.rank(pair.j) - profile.rank(pair.k);
    int label = 0;
    if (pair.k == pair.j + 1)
        label = +1;
    else if (pair.k == pair.j - 1)
        label = -1;
    else if (spec.kind == TaskKind::TIExc && pair.j == spec.p && pair.k == spec.q)
        label = +1;
    else if (spec.kind == TaskKind::TIExc && pair.j == spec.q && pair.k == spec.p)
        label = -1;
    if (label == 0) return rank_diff;
    return profile.m * label + (1.0 - profile.m) * rank_diff;
}

double predict_closed_form(const ClosedFormParams& cfp, ItemPair pair) {
    return predict_from_profile(rank_profile(cfp), cfp.spec, pair);
}

}  // namespace relkrr
