#pragma once

#include <vector>

#include "relkrr/task.hpp"

namespace relkrr {

// Raised on the analytic boundary lambda = 0 (alpha = 0 with creg_inv = 0,
// or a/b = -2 in the tridiagonal inverse). Callers fall back to the dual
// oracle, which is exact there.
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ClosedFormParams {
    double alpha = 0.0;     // conjunctivity, in [0,1]
    double creg_inv = 0.0;  // effective inverse regularization, >= 0
    TaskSpec spec;          // TI or TIExc

    void validate() const;
};

// Per-item ranks r_j = r_ti[j] + r_pert[j], with the closed-form internals.
struct RankProfile {
    int n = 0;
    std::vector<double> r;
    std::vector<double> r_ti;
    std::vector<double> r_pert;
    double lambda = 0.0;      // 0 in the alpha = 1 branch
    double m = 0.0;           // memorization coefficient
    double hbar = 0.0;        // exception dual coefficient (TIExc only)
    double g = 0.0;           // consolidated exception factor G (TIExc only)
    double reg_factor = 0.0;  // Z = delta_s (1 + creg_inv), canonical gauge

    double rank(int j) const { return r[j - 1]; }
};

// lambda = arccosh((1 + creg_inv) / (1 - alpha)).
double lambda_of(double alpha, double creg_inv);

// Ranking system for standard TI.
double rank_ti(int n, double lam, int j);

// Dtilde_ij = cosh((min-1/2) lam) cosh((n-max+1/2) lam).
double dtilde(int n, double lam, int i, int j);

// Consolidated exception factor G.
double g_factor(int n, int p, int q, double lam);

// Perturbation of the ranking system from the exception pair.
double rank_pert(int n, int p, int q, double lam, int j);

// m = alpha / (alpha + creg_inv).
double memorization_coeff(double alpha, double creg_inv);

// Exception dual coefficient in the canonical gauge kappa_s=1, kappa_d=0.
double hbar(int n, int p, int q, double alpha, double creg_inv);

// Entry (i,j) of the inverse of the m x m tridiagonal Toeplitz matrix with
// diagonal a and off-diagonal b, for a/b < -2.
double tridiag_inverse_entry(int m, double a, double b, int i, int j);

RankProfile rank_profile(const ClosedFormParams& cfp);

double predict_closed_form(const ClosedFormParams& cfp, ItemPair pair);

// Prediction from a precomputed profile (avoids re-deriving the ranks when
// sweeping many pairs at fixed parameters).
double predict_from_profile(const RankProfile& profile, const TaskSpec& spec,
                            ItemPair pair);

}  // namespace relkrr
