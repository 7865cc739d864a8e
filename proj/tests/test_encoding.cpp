#include <doctest.h>

#include <cmath>
#include <random>

#include "relkrr/closed_form.hpp"
#include "relkrr/dual.hpp"
#include "relkrr/encoding.hpp"

using namespace relkrr;

TEST_CASE("four-hot features") {
    KernelParams params{2.0, 1.0, 0.25, 1.0};
    FourHotMap map = FourHotMap::from_params(5, params);
    CHECK(map.dimension() == 2 * 5 + 25 + 1);

    Eigen::VectorXd z = four_hot_features(map, {1, 2});
    CHECK((z.array() != 0.0).count() == 4);

    // kappa_d = 0 drops the bias unit.
    FourHotMap nobias = FourHotMap::from_params(5, KernelParams{2.0, 0.5, 0.0});
    CHECK((four_hot_features(nobias, {1, 2}).array() != 0.0).count() == 3);

    // One shared slot: s1^2 + s0^2 = kappa_o.
    double ip = z.dot(four_hot_features(map, {1, 3}));
    CHECK(ip == doctest::Approx(params.kappa_o).epsilon(1e-14));

    // Radicand violations are rejected at construction.
    CHECK_THROWS_AS(FourHotMap::from_params(5, KernelParams{1.0, 0.9, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("kernel equivalence Z Z^T = K") {
    std::vector<KernelParams> params = {
        {2, 1, 0}, {1, 0.5, 0.5}, {3, 1.2, 0.7, 2.0}, KernelParams::from_alpha(0.3, 0.5)};
    std::vector<TaskSpec> specs = {TaskSpec::ti(5), TaskSpec::tp(4),
                                   TaskSpec::ti_exc(9, 6, 4)};
    for (const auto& p : params)
        for (const auto& spec : specs) {
            FourHotMap map = FourHotMap::from_params(spec.n, p);
            CHECK(verify_kernel_equivalence(map, p, build_training_set(spec)) <=
                  1e-12);
        }
}

TEST_CASE("primal ridge decomposition matches the dual oracle") {
    std::vector<std::pair<KernelParams, TaskSpec>> cases = {
        {KernelParams::from_alpha(0.2, 0.0), TaskSpec::ti_exc(9, 6, 4)},
        {KernelParams::from_alpha(0.7, 0.0), TaskSpec::ti(6)},
        {KernelParams{3, 1.2, 0.7, 2.0}, TaskSpec::ti_exc(7, 5, 3)},
        {KernelParams{1, 0.35, 0.1, 0.5}, TaskSpec::tp(5)},
    };
    for (const auto& [params, spec] : cases) {
        Dataset d = build_training_set(spec);
        FourHotMap map = FourHotMap::from_params(spec.n, params);
        Decomposition dec = ridge_primal(map, d, params.c);
        DualSolution sol = dual_solve(params, d);
        CHECK(std::abs(dec.bias) <= 1e-10);
        for (int j = 1; j <= spec.n; ++j)
            for (int k = 1; k <= spec.n; ++k) {
                if (j == k) continue;
                CHECK(std::abs(dec.predict({j, k}) - sol.predict({j, k})) <= 1e-8);
            }
    }
}

TEST_CASE("alpha = 0 decomposition is purely compositional") {
    KernelParams params = KernelParams::from_alpha(0.0, 0.5);
    Dataset d = build_training_set(TaskSpec::ti(7));
    Decomposition dec = ridge_primal(FourHotMap::from_params(7, params), d, params.c);
    CHECK(dec.conjunctive.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("min-norm decomposition matches closed-form ranks") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    KernelParams params = KernelParams::from_alpha(0.2, 0.0);
    Decomposition dec = ridge_primal(FourHotMap::from_params(9, params),
                                     build_training_set(spec), params.c);
    RankProfile prof = rank_profile({0.2, 0.0, spec});
    for (int j = 1; j <= 9; ++j)
        CHECK(dec.ranks(j - 1) == doctest::Approx(prof.rank(j)).epsilon(1e-8));
}

TEST_CASE("cost functional") {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(4);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(4, 4);
    CHECK(cost(r, t, 0.3) == 0.0);
    r << 1, -1, 0.5, 0;
    t(0, 1) = 2.0;
    CHECK(cost(r, t, 0.5) == doctest::Approx(4.0 * r.squaredNorm() + 2.0 * t.squaredNorm()));
    CHECK_THROWS_AS(cost(r, t, 0.0), std::domain_error);
    CHECK_THROWS_AS(cost(r, t, 1.0), std::domain_error);
}

TEST_CASE("weight norm identity for the decomposition") {
    // The four-hot weights realizing (r, t, b) satisfy
    // delta_s * ||w||^2 = 4/(1-alpha) ||r||^2 + 1/alpha ||t||^2 + delta_s/kappa_d b^2,
    // i.e. the r-part carries twice the weight of the displayed cost C(r,t)
    // because both item populations hold a copy of r.
    KernelParams params{2.0, 1.1, 0.6};  // alpha = 2/7; kappa_d > 0 keeps the bias unit
    double alpha = params.conjunctivity();
    REQUIRE(alpha > 0.0);
    REQUIRE(alpha < 1.0);
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    Dataset d = build_training_set(spec);
    FourHotMap map = FourHotMap::from_params(9, params);
    Decomposition dec = ridge_primal(map, d, params.c);

    double s1sq = map.s1 * map.s1, s2sq = map.s2 * map.s2;
    double wsq = 2.0 * dec.ranks.squaredNorm() / s1sq +
                 dec.conjunctive.squaredNorm() / s2sq;
    if (map.s0 > 0.0) wsq += dec.bias * dec.bias / (map.s0 * map.s0);
    double lhs = params.delta_s() * wsq;
    double rhs = 4.0 / (1.0 - alpha) * dec.ranks.squaredNorm() +
                 1.0 / alpha * dec.conjunctive.squaredNorm() +
                 params.delta_s() / params.kappa_d * dec.bias * dec.bias;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("min-norm optimality under feasible perturbations") {
    // At c = inf the decomposition minimizes the weighted norm among all
    // (r, t, b) that keep the training predictions fixed; the gradient of
    // the weight functional must vanish along every constraint-null
    // direction.
    KernelParams params{2.0, 1.1, 0.6};
    double alpha = params.conjunctivity();
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    Dataset d = build_training_set(spec);
    FourHotMap map = FourHotMap::from_params(9, params);
    Decomposition dec = ridge_primal(map, d, params.c);

    const int n = spec.n;
    const int dim = n + n * n + 1;  // (r, t, b)
    Eigen::MatrixXd A(d.size(), dim);
    A.setZero();
    for (int i = 0; i < d.size(); ++i) {
        const ItemPair pr = d.examples[i].pair;
        A(i, pr.j - 1) += 1.0;
        A(i, pr.k - 1) -= 1.0;
        A(i, n + (pr.j - 1) * n + (pr.k - 1)) = 1.0;
        A(i, dim - 1) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    Eigen::MatrixXd null_space = lu.kernel();
    REQUIRE(null_space.cols() > 0);

    // Gradient of delta_s ||w||^2 in (r, t, b) coordinates.
    Eigen::VectorXd grad(dim);
    grad.head(n) = 8.0 / (1.0 - alpha) * dec.ranks;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            grad(n + j * n + k) = 2.0 / alpha * dec.conjunctive(j, k);
    grad(dim - 1) = 2.0 * params.delta_s() / params.kappa_d * dec.bias;

    std::mt19937_64 eng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd mix(null_space.cols());
        for (int i = 0; i < mix.size(); ++i) mix(i) = gauss(eng);
        Eigen::VectorXd dir = null_space * mix;
        double norm = dir.norm();
        if (norm < 1e-12) continue;
        CHECK(std::abs(grad.dot(dir)) / norm <= 1e-6);
    }
}
