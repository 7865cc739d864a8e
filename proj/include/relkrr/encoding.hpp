#pragma once

#include <Eigen/Dense>

#include "relkrr/kernel.hpp"
#include "relkrr/task.hpp"

namespace relkrr {

// Four-hot change of basis: two one-hot item populations scaled by s1, a
// one-hot conjunction population scaled by s2, and a constant bias scaled
// by s0. Induces the same kernel as any exchangeable representation with
// matching (kappa_s, kappa_o, kappa_d).
struct FourHotMap {
    int n = 0;
    double s0 = 0.0;  // sqrt(kappa_d)
    double s1 = 0.0;  // sqrt(kappa_o - kappa_d)
    double s2 = 0.0;  // sqrt((kappa_s - kappa_d) - 2(kappa_o - kappa_d))

    static FourHotMap from_params(int n, const KernelParams& params);

    int dimension() const { return 2 * n + n * n + 1; }
};

Eigen::VectorXd four_hot_features(const FourHotMap& map, ItemPair pair);

// max |Z Z^T - K| over the training set; algebraically zero.
double verify_kernel_equivalence(const FourHotMap& map, const KernelParams& params,
                                 const Dataset& data);

// Readout decomposition f(x_{j,k}) = r_j - r_k + t_{j,k} + b.
struct Decomposition {
    Eigen::VectorXd ranks;        // length n
    Eigen::MatrixXd conjunctive;  // n x n, entry (j-1,k-1) = t_{j,k}
    double bias = 0.0;

    double predict(ItemPair pair) const {
        return ranks(pair.j - 1) - ranks(pair.k - 1) +
               conjunctive(pair.j - 1, pair.k - 1) + bias;
    }
};

// Primal ridge over the four-hot design; c = inf gives the min-norm
// interpolant.
Decomposition ridge_primal(const FourHotMap& map, const Dataset& data, double c);

// C(r,t) = 2/(1-alpha) ||r||^2 + 1/alpha ||t||^2, for alpha in (0,1).
double cost(const Eigen::VectorXd& r, const Eigen::MatrixXd& t, double alpha);

}  // namespace relkrr
