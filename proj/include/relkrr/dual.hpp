#pragma once

#include <Eigen/Dense>

#include "relkrr/kernel.hpp"
#include "relkrr/task.hpp"

namespace relkrr {

struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& msg, double cond)
        : std::runtime_error(msg), condition(cond) {}
    double condition;
};

// Exact numerical solution of the ridge dual; ground truth for all
// closed-form claims.
struct DualSolution {
    KernelParams params;
    Dataset data;
    Eigen::VectorXd coefficients;

    double predict(ItemPair pair) const;

    // Coefficient on the exception pair (p,q); TIExc datasets only.
    double exception_coeff() const;
};

// Solves (K + c^{-1} I) a = y; at c = inf solves K a = y, falling back to the
// minimum-norm least-squares solution when K is numerically singular
// (condition estimate > 1e12).
DualSolution dual_solve(const KernelParams& params, const Dataset& data);

}  // namespace relkrr
