#pragma once

#include <limits>

#include <Eigen/Dense>
#include <json.hpp>

#include "relkrr/task.hpp"

namespace relkrr {

// The three-valued exchangeable kernel (same / one-slot-overlap / distinct)
// plus the inverse regularization strength c. c = +inf is the min-norm limit.
struct KernelParams {
    double kappa_s = 1.0;
    double kappa_o = 0.5;
    double kappa_d = 0.0;
    double c = std::numeric_limits<double>::infinity();

    void validate() const;

    double delta_s() const { return kappa_s - kappa_d; }
    double delta_o() const { return kappa_o - kappa_d; }

    // alpha = 1 - 2*delta_o/delta_s in [0,1].
    double conjunctivity() const;
    // 1/(c * delta_s); 0 when c = inf.
    double effective_reg_inv() const;

    bool min_norm() const { return std::isinf(c); }

    // Canonical gauge kappa_s=1, kappa_d=0, kappa_o=(1-alpha)/2,
    // c = 1/creg_inv (inf when creg_inv = 0).
    static KernelParams from_alpha(double alpha, double creg_inv);

    nlohmann::json to_json() const;
    static KernelParams from_json(const nlohmann::json& j);
};

double pair_kernel(const KernelParams& params, ItemPair a, ItemPair b);

Eigen::MatrixXd gram_matrix(const KernelParams& params, const Dataset& data);

Eigen::VectorXd test_kernel_vector(const KernelParams& params, const Dataset& data,
                                   ItemPair pair);

}  // namespace relkrr
