#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "relkrr/dual.hpp"
#include "relkrr/random_features.hpp"

using namespace relkrr;

TEST_CASE("config validation") {
    CHECK_THROWS_AS((FeatureConfig{2, 2, 8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((FeatureConfig{9, 4, 8}).validate(), std::invalid_argument);  // d < n
    CHECK_THROWS_AS((FeatureConfig{9, 9, 0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(FeatureConfig::make(9, 64, Nonlinearity::Relu, 1).validate());
    CHECK(FeatureConfig::make(9, 64, Nonlinearity::Relu, 1).resolved_weight_var() ==
          doctest::Approx(0.5 / 9));
}

TEST_CASE("same seed, same features; different seed, different features") {
    FeatureConfig cfg = FeatureConfig::make(5, 128, Nonlinearity::Relu, 42);
    Eigen::MatrixXd a = sample_feature_map(cfg);
    Eigen::MatrixXd b = sample_feature_map(cfg);
    CHECK(a == b);
    cfg.seed = 43;
    CHECK(a != sample_feature_map(cfg));
}

TEST_CASE("identity nonlinearity is compositional") {
    // The conjunctivity estimate carries O(1/sqrt(h)) sampling noise and only
    // reaches zero in the wide limit, but the min-norm predictions of linear
    // features equal the alpha = 0 kernel model exactly at any width >= 2n.
    const double inf = std::numeric_limits<double>::infinity();
    FeatureConfig cfg = FeatureConfig::make(6, 256, Nonlinearity::Identity, 3);
    Eigen::MatrixXd features = sample_feature_map(cfg);
    EmpiricalKernel est = empirical_kernel_params(features, 6);
    CHECK(std::abs(est.alpha_hat) <= 0.02);

    TaskSpec spec = TaskSpec::ti_exc(6, 4, 2);
    Dataset data = build_training_set(spec);
    DualSolution model = dual_solve(KernelParams::from_alpha(0.0, 0.0), data);
    double worst = 0.0;
    for (int j = 1; j <= 6; ++j)
        for (int k = 1; k <= 6; ++k) {
            if (j == k) continue;
            worst = std::max(worst, std::abs(rf_ridge_predict(features, data, inf,
                                                              {j, k}) -
                                             model.predict({j, k})));
        }
    CHECK(worst <= 1e-6);

    // The width-sweep helper stays usable even when the raw estimate falls
    // just outside the exchangeable family.
    CHECK(rf_width_cell(cfg, spec, inf).max_gap <= 1e-6);
}

TEST_CASE("empirical kernel estimation sanity") {
    CHECK_THROWS_AS(empirical_kernel_params(Eigen::MatrixXd::Zero(10, 4), 5),
                    std::invalid_argument);  // wrong row count
    FeatureConfig cfg = FeatureConfig::make(7, 512, Nonlinearity::Relu, 9);
    EmpiricalKernel est = empirical_kernel_params(sample_feature_map(cfg), 7);
    CHECK(est.kappa_s > est.kappa_o);
    CHECK(est.kappa_o > est.kappa_d);
    CHECK(est.alpha_hat > 0.0);
    CHECK(est.alpha_hat < 1.0);
}

TEST_CASE("within-category variance shrinks with width") {
    auto category_variance = [](int h, std::uint64_t seed) {
        const int n = 6;
        FeatureConfig cfg = FeatureConfig::make(n, h, Nonlinearity::Relu, seed);
        Eigen::MatrixXd f = sample_feature_map(cfg);
        // Variance of the one-slot-overlap inner products, normalized by h.
        double sum = 0.0, sumsq = 0.0;
        long cnt = 0;
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int j2 = 1; j2 <= n; ++j2)
                    for (int k2 = 1; k2 <= n; ++k2) {
                        if (j == k || j2 == k2) continue;
                        if ((j == j2) == (k == k2)) continue;
                        double ip = f.row((j - 1) * n + k - 1)
                                        .dot(f.row((j2 - 1) * n + k2 - 1)) /
                                    h;
                        sum += ip;
                        sumsq += ip * ip;
                        ++cnt;
                    }
        double mean = sum / cnt;
        return sumsq / cnt - mean * mean;
    };
    CHECK(category_variance(4096, 5) < category_variance(128, 5));
}

TEST_CASE("antisymmetry deviation shrinks with width") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    Dataset data = build_training_set(spec);
    auto max_asym = [&](int h) {
        Eigen::MatrixXd f =
            sample_feature_map(FeatureConfig::make(9, h, Nonlinearity::Relu, 17));
        double worst = 0.0;
        for (int j = 1; j <= 9; ++j)
            for (int k = j + 1; k <= 9; ++k) {
                double c = std::numeric_limits<double>::infinity();
                worst = std::max(worst, std::abs(rf_ridge_predict(f, data, c, {j, k}) +
                                                 rf_ridge_predict(f, data, c, {k, j})));
            }
        return worst;
    };
    double coarse = max_asym(1 << 8);
    double fine = max_asym(1 << 12);
    CHECK(fine < coarse);
    CHECK(coarse > 0.0);  // exact antisymmetry only at infinite width
}

TEST_CASE("prediction gap to the kernel model shrinks with width") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    const double c = std::numeric_limits<double>::infinity();
    auto median_gap = [&](int h) {
        std::vector<double> gaps;
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            gaps.push_back(
                rf_width_cell(FeatureConfig::make(9, h, Nonlinearity::Relu, seed), spec, c)
                    .max_gap);
        std::sort(gaps.begin(), gaps.end());
        return gaps[1];
    };
    CHECK(median_gap(1 << 12) < median_gap(1 << 8));
}

TEST_CASE("relu conjunctivity lands near 0.15 at moderate width") {
    FeatureConfig cfg = FeatureConfig::make(9, 1 << 13, Nonlinearity::Relu, 2);
    EmpiricalKernel est = empirical_kernel_params(sample_feature_map(cfg), 9);
    CHECK(est.alpha_hat > 0.05);
    CHECK(est.alpha_hat < 0.30);
}
