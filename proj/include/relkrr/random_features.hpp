#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "relkrr/kernel.hpp"
#include "relkrr/task.hpp"

namespace relkrr {

enum class Nonlinearity { Relu, Tanh, Identity };

std::string to_string(Nonlinearity s);
Nonlinearity nonlinearity_from_string(const std::string& s);

struct FeatureConfig {
    int n = 0;                   // items
    int d = 0;                   // per-item dimension; d = n gives one-hot items
    int h = 0;                   // width
    Nonlinearity sigma = Nonlinearity::Relu;
    double weight_var = 0.0;     // 0 selects the default 1/(2d)
    std::uint64_t seed = 0;

    void validate() const;
    double resolved_weight_var() const { return weight_var > 0.0 ? weight_var : 0.5 / d; }

    static FeatureConfig make(int n, int h, Nonlinearity sigma, std::uint64_t seed) {
        return {n, n, h, sigma, 0.0, seed};
    }
};

// Feature matrix over all n^2 ordered pairs; row (j-1)*n + (k-1) holds
// sigma(W concat(x_j, x_k)). Deterministic given the seed, independent of
// platform (hand-rolled Gaussian sampling).
Eigen::MatrixXd sample_feature_map(const FeatureConfig& cfg);

struct EmpiricalKernel {
    double kappa_s = 0.0;
    double kappa_o = 0.0;
    double kappa_d = 0.0;
    double alpha_hat = 0.0;

    KernelParams params(double c) const { return {kappa_s, kappa_o, kappa_d, c}; }
};

EmpiricalKernel empirical_kernel_params(const Eigen::MatrixXd& features, int n);

// Ridge regression on the finite feature matrix, evaluated on one pair.
double rf_ridge_predict(const Eigen::MatrixXd& features, const Dataset& data, double c,
                        ItemPair pair);
double rf_ridge_predict(const FeatureConfig& cfg, const Dataset& data, double c,
                        ItemPair pair);

struct WidthSweepRow {
    int h = 0;
    std::uint64_t seed = 0;
    double alpha_hat = 0.0;
    double max_gap = 0.0;  // max |finite-width - kernel prediction| over pairs
};

// One cell of a width sweep: alpha_hat of the empirical kernel, plus the
// largest gap over all ordered pairs (j != k) between finite-width ridge
// predictions and the kernel model fitted with the same empirical kernel
// values (isolating ridge-vs-kernel agreement from sampling error in the
// kernel itself).
WidthSweepRow rf_width_cell(const FeatureConfig& cfg, const TaskSpec& spec, double c);

}  // namespace relkrr
