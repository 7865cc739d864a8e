#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "relkrr/closed_form.hpp"
#include "relkrr/dual.hpp"

using namespace relkrr;

TEST_CASE("lambda") {
    CHECK(lambda_of(0.5, 0.0) == doctest::Approx(1.3169578969248166).epsilon(1e-14));
    CHECK(lambda_of(0.0, 1.0) == doctest::Approx(1.3169578969248166).epsilon(1e-14));
    CHECK_THROWS_AS(lambda_of(0.0, 0.0), DegenerateError);
    CHECK_THROWS_AS(lambda_of(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(lambda_of(1.2, 0.0), std::domain_error);
}

TEST_CASE("rank_ti symmetry and oracle agreement") {
    double lam = lambda_of(0.5, 0.0);  // arccosh(2)
    CHECK(rank_ti(9, lam, 5) == doctest::Approx(0.0));
    for (int j = 1; j <= 9; ++j)
        CHECK(rank_ti(9, lam, j) == doctest::Approx(-rank_ti(9, lam, 10 - j)).epsilon(1e-12));

    // Rank differences must reproduce oracle predictions on non-adjacent
    // TI pairs at matching (alpha, creg).
    TaskSpec spec = TaskSpec::ti(9);
    DualSolution sol =
        dual_solve(KernelParams::from_alpha(0.5, 0.0), build_training_set(spec));
    for (int j = 1; j <= 9; ++j)
        for (int k = 1; k <= 9; ++k) {
            if (std::abs(j - k) <= 1) continue;
            CHECK(rank_ti(9, lam, j) - rank_ti(9, lam, k) ==
                  doctest::Approx(sol.predict({j, k})).epsilon(1e-10));
        }
}

TEST_CASE("dtilde") {
    CHECK(dtilde(9, 1.0, 3, 7) == doctest::Approx(dtilde(9, 1.0, 7, 3)));
    CHECK(dtilde(2, 1.0, 1, 1) ==
          doctest::Approx(2.652638162949437).epsilon(1e-14));  // cosh(.5)cosh(1.5)
}

TEST_CASE("dtilde consistent with tridiagonal inverse combinations") {
    // D_ij = alpha'(Binv_{(i-1)j} + Binv_{i(j-1)} - Binv_{ij} - Binv_{(i-1)(j-1)})
    // over the (n-1)x(n-1) tridiagonal system must collapse to
    // -delta_{ij} + 2*dtilde_ij*tanh(lam/2)/sinh(n lam).
    const int n = 9;
    for (auto [alpha, creg] : {std::pair{0.3, 0.0}, {0.6, 0.5}, {0.1, 2.0}}) {
        double a = 1.0 + creg, b = -(1.0 - alpha) / 2.0;
        double lam = lambda_of(alpha, creg);
        double ap = (1.0 - alpha) / 2.0;
        auto binv = [&](int i, int j) {
            if (i < 1 || j < 1 || i > n - 1 || j > n - 1) return 0.0;
            return tridiag_inverse_entry(n - 1, a, b, i, j);
        };
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                double d = ap * (binv(i - 1, j) + binv(i, j - 1) - binv(i, j) -
                                 binv(i - 1, j - 1));
                double expected = (i == j ? -1.0 : 0.0) +
                                  2.0 * dtilde(n, lam, i, j) *
                                      std::tanh(lam / 2) / std::sinh(n * lam);
                CHECK(d == doctest::Approx(expected).epsilon(1e-10));
            }
    }
}

TEST_CASE("g_factor") {
    CHECK(g_factor(9, 6, 4, 1.0) ==
          doctest::Approx(1491.654026983194).epsilon(1e-13));
    for (double lam : {0.1, 0.7, 2.0}) {
        CHECK(g_factor(9, 6, 4, lam) > 0.0);
        CHECK(g_factor(7, 7, 1, lam) > 0.0);
        // The shared denominator of the perturbation stays positive (q < p
        // makes the correction term add).
        double den = std::sinh(lam) * std::sinh(9 * lam) -
                     2.0 * std::sinh((4 - 6) / 2.0 * lam) * g_factor(9, 6, 4, lam);
        CHECK(den > 0.0);
    }
}

TEST_CASE("rank_pert sign structure and oracle agreement") {
    const int n = 9, p = 6, q = 4;
    double lam = lambda_of(0.2, 0.0);
    for (int j = 1; j < q; ++j) CHECK(rank_pert(n, p, q, lam, j) < 0.0);
    for (int j = p + 1; j <= n; ++j) CHECK(rank_pert(n, p, q, lam, j) > 0.0);

    // Full ranks against the oracle: fold the closed form and compare
    // non-training predictions r_j - r_k.
    TaskSpec spec = TaskSpec::ti_exc(n, p, q);
    DualSolution sol =
        dual_solve(KernelParams::from_alpha(0.2, 0.0), build_training_set(spec));
    RankProfile prof = rank_profile({0.2, 0.0, spec});
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            if (j == k || std::abs(j - k) == 1) continue;
            if ((j == p && k == q) || (j == q && k == p)) continue;
            CHECK(prof.rank(j) - prof.rank(k) ==
                  doctest::Approx(sol.predict({j, k})).epsilon(1e-9));
        }
}

TEST_CASE("memorization coefficient") {
    CHECK(memorization_coeff(0.3, 0.0) == doctest::Approx(1.0));
    CHECK(memorization_coeff(0.5, 0.5) == doctest::Approx(0.5));
    CHECK(memorization_coeff(0.15, 0.05) == doctest::Approx(0.75));
    CHECK_THROWS_AS(memorization_coeff(0.0, 0.0), DegenerateError);
}

TEST_CASE("rank profile frozen values and shape at alpha=0.2, min-norm") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    RankProfile prof = rank_profile({0.2, 0.0, spec});
    // Frozen from the dual oracle before these tests were written.
    CHECK(prof.lambda == doctest::Approx(0.69314718055994529).epsilon(1e-14));
    CHECK(prof.m == doctest::Approx(1.0));
    CHECK(prof.hbar == doctest::Approx(2.9591836734693882).epsilon(1e-12));
    CHECK(prof.r_ti[0] == doctest::Approx(0.99415204678362556).epsilon(1e-12));
    CHECK(prof.r_pert[0] == doctest::Approx(-0.055376536579544104).epsilon(1e-12));
    CHECK(prof.r[0] == doctest::Approx(0.93877551020408145).epsilon(1e-12));

    for (int j = 1; j <= 9; ++j)
        CHECK(prof.r[j - 1] == doctest::Approx(prof.r_ti[j - 1] + prof.r_pert[j - 1]));
    // Fig-3B shape: decreasing on both sections, increasing on the loop.
    for (int j : {1, 2}) CHECK(prof.rank(j) > prof.rank(j + 1));
    for (int j : {7, 8}) CHECK(prof.rank(j) > prof.rank(j + 1));
    for (int j : {4, 5}) CHECK(prof.rank(j) < prof.rank(j + 1));
}

TEST_CASE("rank profile for plain TI has no perturbation") {
    RankProfile prof = rank_profile({0.35, 0.2, TaskSpec::ti(8)});
    for (double v : prof.r_pert) CHECK(v == 0.0);
    for (int j = 1; j <= 8; ++j)
        CHECK(prof.r_ti[j - 1] == doctest::Approx(-prof.r_ti[8 - j]).epsilon(1e-12));
}

TEST_CASE("alpha = 1 collapses ranks") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    RankProfile prof = rank_profile({1.0, 0.25, spec});
    for (double v : prof.r) CHECK(v == 0.0);
    CHECK(prof.m == doctest::Approx(1.0 / 1.25));
    // Test pairs predict 0; training pairs predict m*y.
    CHECK(predict_closed_form({1.0, 0.25, spec}, {1, 3}) == doctest::Approx(0.0));
    CHECK(predict_closed_form({1.0, 0.25, spec}, {1, 2}) ==
          doctest::Approx(1.0 / 1.25));
    CHECK(predict_closed_form({1.0, 0.25, spec}, {4, 6}) ==
          doctest::Approx(-1.0 / 1.25));
}

TEST_CASE("closed form rejects TP and the degenerate boundary") {
    CHECK_THROWS_AS(ClosedFormParams({0.5, 0.0, TaskSpec::tp(5)}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(rank_profile({0.0, 0.0, TaskSpec::ti(5)}), DegenerateError);
}

TEST_CASE("prediction antisymmetry and training identity") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    for (auto [alpha, creg] : {std::pair{0.2, 0.0}, {0.5, 0.3}, {0.9, 2.0}}) {
        ClosedFormParams cfp{alpha, creg, spec};
        RankProfile prof = rank_profile(cfp);
        for (int j = 1; j <= 9; ++j)
            for (int k = j + 1; k <= 9; ++k)
                CHECK(std::abs(predict_closed_form(cfp, {j, k}) +
                               predict_closed_form(cfp, {k, j})) <= 1e-10);
        // Adjacent training pairs: f = m + (1-m)(r_j - r_{j+1}).
        for (int j = 1; j < 9; ++j) {
            double expect =
                prof.m + (1 - prof.m) * (prof.rank(j) - prof.rank(j + 1));
            CHECK(predict_closed_form(cfp, {j, j + 1}) ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("oracle equivalence on sampled settings") {
    std::vector<TaskSpec> specs = {TaskSpec::ti(6), TaskSpec::ti_exc(9, 6, 4),
                                   TaskSpec::ti_exc(7, 7, 1),
                                   TaskSpec::ti_exc(5, 3, 1)};
    for (const auto& spec : specs)
        for (auto [alpha, creg] :
             {std::pair{0.05, 0.0}, {0.2, 0.01}, {0.5, 1.0}, {0.95, 10.0}}) {
            DualSolution sol = dual_solve(KernelParams::from_alpha(alpha, creg),
                                          build_training_set(spec));
            ClosedFormParams cfp{alpha, creg, spec};
            for (int j = 1; j <= spec.n; ++j)
                for (int k = 1; k <= spec.n; ++k) {
                    if (j == k) continue;
                    double ref = sol.predict({j, k});
                    CHECK(std::abs(predict_closed_form(cfp, {j, k}) - ref) <=
                          1e-8 * std::max(1.0, std::abs(ref)));
                }
        }
}

TEST_CASE("section monotonicity across the grid") {
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    for (double alpha : {0.05, 0.25, 0.5, 0.75, 0.95})
        for (double creg : {0.0, 0.1, 1.0, 10.0}) {
            RankProfile prof = rank_profile({alpha, creg, spec});
            for (int j : {1, 2}) CHECK(prof.rank(j) > prof.rank(j + 1));
            for (int j : {7, 8}) CHECK(prof.rank(j) > prof.rank(j + 1));
        }
}

TEST_CASE("tridiagonal inverse entries") {
    CHECK(tridiag_inverse_entry(1, 3.0, -1.0, 1, 1) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(tridiag_inverse_entry(2, 2.5, -1.0, 1, 1) ==
          doctest::Approx(2.5 / 5.25).epsilon(1e-12));
    CHECK(tridiag_inverse_entry(5, 3.0, -1.2, 2, 4) ==
          doctest::Approx(tridiag_inverse_entry(5, 3.0, -1.2, 4, 2)));
    CHECK_THROWS_AS(tridiag_inverse_entry(3, 2.0, -1.0, 1, 1), DegenerateError);
    CHECK_THROWS_AS(tridiag_inverse_entry(3, 1.0, -1.0, 1, 1), std::domain_error);
}

TEST_CASE("tridiagonal inverse matches direct inversion") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> ratio(2.05, 6.0), scale(0.2, 3.0);
    for (int m : {2, 5, 11, 32}) {
        for (int trial = 0; trial < 4; ++trial) {
            double b = -scale(eng);
            double a = -b * ratio(eng);
            Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                B(i, i) = a;
                if (i + 1 < m) B(i, i + 1) = B(i + 1, i) = b;
            }
            Eigen::MatrixXd Binv = B.inverse();
            for (int i = 1; i <= m; ++i)
                for (int j = 1; j <= m; ++j)
                    CHECK(std::abs(tridiag_inverse_entry(m, a, b, i, j) -
                                   Binv(i - 1, j - 1)) <= 1e-9);
        }
    }
}

TEST_CASE("hbar positive and consistent with the oracle") {
    const int n = 9, p = 6, q = 4;
    TaskSpec spec = TaskSpec::ti_exc(n, p, q);
    for (double alpha : {0.05, 0.3, 0.7, 0.99})
        for (double creg : {0.0, 0.1, 1.0}) {
            double h = hbar(n, p, q, alpha, creg);
            CHECK(h > 0.0);
            DualSolution sol = dual_solve(KernelParams::from_alpha(alpha, creg),
                                          build_training_set(spec));
            CHECK(std::abs(h - sol.exception_coeff()) <=
                  1e-8 * std::max(1.0, std::abs(h)));
        }
    // Toward alpha = 1 the ranks vanish while hbar stays finite.
    RankProfile prof = rank_profile({0.999, 0.0, spec});
    CHECK(std::abs(prof.rank(1)) < 0.05);
    CHECK(std::isfinite(prof.hbar));
}

TEST_CASE("log-space evaluation at large lambda") {
    // n*lambda far past the overflow point of sinh: every quantity must stay
    // finite, with the asymptotic ratio log(r1/r2) -> lambda.
    const double lam = 80.0;
    for (int j = 1; j <= 9; ++j) CHECK(std::isfinite(rank_ti(9, lam, j)));
    CHECK(std::log(rank_ti(9, lam, 1) / rank_ti(9, lam, 2)) ==
          doctest::Approx(lam).epsilon(1e-9));
    for (int j = 1; j <= 9; ++j)
        CHECK(rank_ti(9, lam, j) == doctest::Approx(-rank_ti(9, lam, 10 - j)));

    // A profile needing the log-space branch end to end, compared to the
    // oracle at matching parameters (heavily regularized, so the system is
    // well conditioned and the oracle exact).
    TaskSpec spec = TaskSpec::ti_exc(9, 6, 4);
    const double alpha = 0.5, creg = 1e17;
    RankProfile prof = rank_profile({alpha, creg, spec});
    CHECK(prof.lambda * 9 > 350.0);
    DualSolution sol = dual_solve(KernelParams::from_alpha(alpha, creg),
                                  build_training_set(spec));
    for (int j = 1; j <= 9; ++j)
        for (int k = 1; k <= 9; ++k) {
            if (j == k) continue;
            double ref = sol.predict({j, k});
            double cf = predict_closed_form({alpha, creg, spec}, {j, k});
            CHECK(std::isfinite(cf));
            CHECK(std::abs(cf - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
        }
}
