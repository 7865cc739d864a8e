#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "relkrr/kernel.hpp"

using namespace relkrr;

TEST_CASE("pair kernel three values, slot-wise") {
    KernelParams p{2.0, 1.0, 0.25, 1.0};
    CHECK(pair_kernel(p, {1, 2}, {1, 2}) == 2.0);
    CHECK(pair_kernel(p, {1, 2}, {1, 3}) == 1.0);
    CHECK(pair_kernel(p, {1, 2}, {3, 2}) == 1.0);
    // Slot comparison only: the swapped pair shares no slot.
    CHECK(pair_kernel(p, {1, 2}, {2, 1}) == 0.25);
    CHECK(pair_kernel(p, {1, 2}, {3, 4}) == 0.25);
    // Symmetry in the two arguments.
    CHECK(pair_kernel(p, {4, 2}, {1, 2}) == pair_kernel(p, {1, 2}, {4, 2}));
}

TEST_CASE("conjunctivity") {
    CHECK(KernelParams{2, 1, 0}.conjunctivity() == doctest::Approx(0.0));
    CHECK(KernelParams{1, 0.5, 0.5}.conjunctivity() == doctest::Approx(1.0));
    CHECK(KernelParams{3, 1, 0}.conjunctivity() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("effective inverse regularization") {
    CHECK(KernelParams{1, 0.5, 0}.effective_reg_inv() == 0.0);  // c = inf default
    CHECK(KernelParams{2, 1, 0, 1.0}.effective_reg_inv() == doctest::Approx(0.5));
    CHECK(KernelParams{0.5, 0.25, 0, 4.0}.effective_reg_inv() == doctest::Approx(0.5));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((KernelParams{1, 0.5, 1}.validate()), std::invalid_argument);   // delta_s <= 0
    CHECK_THROWS_AS((KernelParams{1, 0.9, 0}.validate()), std::invalid_argument);   // alpha < 0
    CHECK_THROWS_AS((KernelParams{1, -0.1, 0}.validate()), std::invalid_argument);  // kappa_o < kappa_d
    CHECK_THROWS_AS((KernelParams{1, 0.25, -0.5}.validate()), std::invalid_argument);  // kappa_d < 0
    CHECK_THROWS_AS((KernelParams{1, 0.5, 0, -1.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(KernelParams{1, 0.5, 0}.validate());
}

TEST_CASE("gram matrix") {
    KernelParams p{2, 1, 0};
    Dataset ti3 = build_training_set(TaskSpec::ti(3));
    Eigen::MatrixXd K = gram_matrix(p, ti3);
    REQUIRE(K.rows() == 4);
    CHECK(K.diagonal().isApproxToConstant(2.0));
    CHECK(K == K.transpose());
    // Entry for ((1,2),(2,3)): no slot match.
    int a = ti3.find({1, 2}), b = ti3.find({2, 3});
    CHECK(K(a, b) == 0.0);

    Eigen::MatrixXd K2 =
        gram_matrix(p, build_training_set(TaskSpec::ti_exc(9, 6, 4)));
    CHECK(K2.rows() == 18);
}

TEST_CASE("gram matrix positive semidefinite on sampled params") {
    std::vector<KernelParams> params = {
        {2, 1, 0}, {1, 0.5, 0.5}, {3, 1.2, 0.7, 2.0}, {1, 0.25, 0, 0.5}, {5, 2.5, 0}};
    std::vector<TaskSpec> specs = {TaskSpec::ti(6), TaskSpec::tp(5),
                                   TaskSpec::ti_exc(9, 6, 4)};
    for (const auto& p : params)
        for (const auto& spec : specs) {
            Eigen::MatrixXd K = gram_matrix(p, build_training_set(spec));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
            CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        }
}

TEST_CASE("test kernel vector") {
    KernelParams p{2, 1, 0.25};
    Dataset d = build_training_set(TaskSpec::ti(9));
    // A training pair sees itself with kappa_s.
    Eigen::VectorXd v = test_kernel_vector(p, d, {3, 4});
    CHECK(v(d.find({3, 4})) == 2.0);
    // (1,5): kappa_o exactly where a slot matches.
    Eigen::VectorXd u = test_kernel_vector(p, d, {1, 5});
    for (int i = 0; i < d.size(); ++i) {
        const ItemPair t = d.examples[i].pair;
        bool share = t.j == 1 || t.k == 5;
        CHECK(u(i) == (share ? 1.0 : 0.25));
    }
    // A pair sharing no item with any training pair needs items far from
    // every adjacency; impossible in TI, so check a distinct-slots case.
    CHECK(u(d.find({8, 9})) == 0.25);
}

TEST_CASE("canonical construction from alpha") {
    KernelParams p = KernelParams::from_alpha(0.3, 0.25);
    CHECK(p.kappa_s == 1.0);
    CHECK(p.kappa_d == 0.0);
    CHECK(p.kappa_o == doctest::Approx(0.35));
    CHECK(p.conjunctivity() == doctest::Approx(0.3));
    CHECK(p.effective_reg_inv() == doctest::Approx(0.25));
    CHECK(KernelParams::from_alpha(0.3, 0.0).min_norm());
}

TEST_CASE("json round trip with inf sentinel") {
    KernelParams p{2, 1, 0.25, 3.5};
    KernelParams r = KernelParams::from_json(p.to_json());
    CHECK(r.kappa_s == p.kappa_s);
    CHECK(r.c == p.c);

    KernelParams inf{2, 1, 0.25};
    auto j = inf.to_json();
    CHECK(j["c"] == "inf");
    CHECK(KernelParams::from_json(j).min_norm());
}
