#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcfa/gauss.hpp"

using namespace mcfa;
using namespace mcfa::gauss;
using Catch::Approx;

namespace {
const RandomSource src{20240615};
}

TEST_CASE("sampling determinism and moments") {
    RandomStream a = src.stream("det");
    RandomStream b = src.stream("det");
    REQUIRE(sample_std_gaussian(3, a) == sample_std_gaussian(3, b));
    REQUIRE_THROWS_AS(sample_std_gaussian(0, a), std::invalid_argument);

    // m=1 mean within 4/sqrt(reps) of zero
    RandomStream g = src.stream("mean");
    RunningStats acc;
    const long reps = 1000000;
    for (long i = 0; i < reps; ++i) acc.add(g.normal());
    REQUIRE(std::abs(acc.mean()) < 4.0 / std::sqrt(static_cast<double>(reps)));

    // m=2 sample covariance within 1% of the identity
    RandomStream g2 = src.stream("cov");
    double c00 = 0, c01 = 0, c11 = 0;
    for (long i = 0; i < reps; ++i) {
        const auto x = sample_std_gaussian(2, g2);
        c00 += x[0] * x[0];
        c01 += x[0] * x[1];
        c11 += x[1] * x[1];
    }
    REQUIRE(c00 / reps == Approx(1.0).margin(0.01));
    REQUIRE(c11 / reps == Approx(1.0).margin(0.01));
    REQUIRE(std::abs(c01 / reps) < 0.01);
}

TEST_CASE("expected norm estimates match closed forms") {
    // E||X||_1 = sqrt(2/pi) m
    const auto e1 = expected_norm_estimate({3, 1.0}, 100000, src.stream("norm1"));
    REQUIRE(std::abs(e1.mean - std::sqrt(2.0 / bounds::pi) * 3.0) < 3.0 * e1.std_error);

    // single coordinate: E|X| = sqrt(2/pi)
    const auto einf = expected_norm_estimate({1, inf}, 100000, src.stream("norminf"));
    REQUIRE(einf.mean == Approx(std::sqrt(2.0 / bounds::pi)).margin(0.01));

    // chi distribution with two degrees of freedom: E||X||_2 = sqrt(pi/2)
    const auto e2 = expected_norm_estimate({2, 2.0}, 200000, src.stream("norm2"));
    REQUIRE(std::abs(e2.mean - std::sqrt(bounds::pi / 2.0)) < 3.0 * e2.std_error);

    REQUIRE_THROWS_AS(expected_norm_estimate({2, 2.0}, 1, src.stream("x")),
                      std::invalid_argument);
}

TEST_CASE("norm bounds: published constants and the (p,m) grid") {
    REQUIRE(moment_growth_K() == Approx(0.805228).margin(1e-6));
    REQUIRE(tail_alpha() == Approx(0.90045).margin(1e-5));
    REQUIRE(max_norm_lower_c() == Approx(0.277159).margin(1e-6));
    REQUIRE(max_norm_upper_C() == Approx(2.18884).margin(1e-5));

    const auto b14 = gauss_norm_bounds({4, 1.0});
    REQUIRE(b14.lower == Approx(std::sqrt(2.0 / bounds::pi) * 4.0).margin(1e-12));
    REQUIRE(b14.upper == Approx(0.805228 * 4.0).margin(1e-4));

    const auto binf1 = gauss_norm_bounds({1, inf});
    REQUIRE(binf1.lower == Approx(0.277159).margin(1e-5));
    REQUIRE(binf1.upper == Approx(2.18884).margin(1e-4));

    // lower <= mean + 3 se and mean - 3 se <= upper over the grid
    int idx = 0;
    for (double p : {1.0, 2.0, 4.0, inf}) {
        for (int m : {1, 2, 8, 64}) {
            const auto est =
                expected_norm_estimate({m, p}, 20000, src.stream("grid", idx++));
            const auto nb = gauss_norm_bounds({m, p});
            INFO("p=" << p << " m=" << m << " mean=" << est.mean);
            REQUIRE(nb.lower <= est.mean + 3.0 * est.std_error);
            REQUIRE(est.mean - 3.0 * est.std_error <= nb.upper);
        }
    }
}

TEST_CASE("deviation tail") {
    REQUIRE_THROWS_AS(deviation_tail(Eigen::MatrixXd::Identity(2, 2), 2.0, 1.0, 10,
                                     src.stream("x")),
                      std::invalid_argument);
    // formula values
    {
        const auto r = deviation_tail(Eigen::MatrixXd::Identity(4, 4), 2.0, 3.0, 2000,
                                      src.stream("dev3"));
        REQUIRE(r.bound == Approx(std::exp(-4.0 / bounds::pi)).margin(1e-12));
    }
    // bound -> 1 as lambda -> 1+
    {
        const auto r = deviation_tail(Eigen::MatrixXd::Identity(4, 4), 2.0, 1.0 + 1e-9, 200,
                                      src.stream("dev1"));
        REQUIRE(r.bound == Approx(1.0).margin(1e-6));
        REQUIRE(r.empirical_tail <= r.bound);
    }
    // empirical tail respects the bound, with binomial-3sigma slack
    for (double lambda : {1.5, 2.0, 3.0}) {
        const auto r = deviation_tail(Eigen::MatrixXd::Identity(4, 4), 2.0, lambda, 100000,
                                      src.stream("devgrid", static_cast<uint64_t>(lambda * 2)));
        const double se = std::sqrt(r.bound * (1.0 - r.bound) / 100000.0);
        INFO("lambda=" << lambda);
        REQUIRE(r.empirical_tail <= r.bound + 3.0 * se);
        REQUIRE(r.sharper_bound <= r.bound + 1e-12);
        REQUIRE(r.empirical_tail <= std::exp(-1.0 / bounds::pi) + 3.0 * se);
    }
}

TEST_CASE("operator norms") {
    Eigen::MatrixXd J(2, 2);
    J << 3.0, 0.0, 0.0, 1.0;
    REQUIRE(op_norm_2_to(J, 2.0) == Approx(3.0).margin(1e-12));
    REQUIRE(op_norm_2_to(J, inf) == Approx(3.0).margin(1e-12));
    // ||diag(3,1)||_{2->1} = sqrt(9+1)
    REQUIRE(op_norm_2_to(J, 1.0) == Approx(std::sqrt(10.0)).margin(1e-12));
    REQUIRE(op_norm_2_to(Eigen::MatrixXd::Identity(4, 4), 1.0) == Approx(2.0).margin(1e-12));
}

TEST_CASE("determinant-optimal measures") {
    // ell_1^2: sqrt(pi/2)/2 times the identity
    {
        const auto res = lewis_optimal_measure(1.0, 2, 1e-10, src);
        REQUIRE(res.converged);
        const double ideal = std::sqrt(bounds::pi / 2.0) / 2.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                REQUIRE(std::abs(res.J(i, j) - (i == j ? ideal : 0.0)) < 0.05 * ideal);
    }
    // ell_2^2: a multiple of an orthogonal matrix with factor 1/E||X||_2;
    // cross-checked against brute force over diagonal maps
    {
        const auto res = lewis_optimal_measure(2.0, 2, 1e-10, src);
        REQUIRE(res.converged);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(res.J);
        const double c = 1.0 / std::sqrt(bounds::pi / 2.0);
        REQUIRE(svd.singularValues()[0] == Approx(c).margin(0.05 * c));
        REQUIRE(svd.singularValues()[1] == Approx(c).margin(0.05 * c));

        // brute force: maximize the determinant over diagonal maps under the
        // frozen-sample normalization; the symmetric optimum has a = b
        const FrozenSample sample(2, 10000, src.stream("lewis-frozen"));
        double best_det = 0.0, best_a = 0.0, best_b = 0.0;
        for (double a = 0.5; a <= 1.1; a += 0.01) {
            for (double b = 0.5; b <= 1.1; b += 0.01) {
                Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
                D(0, 0) = a;
                D(1, 1) = b;
                D /= sample.mean_norm(D, 2.0);
                if (D.determinant() > best_det) {
                    best_det = D.determinant();
                    best_a = D(0, 0);
                    best_b = D(1, 1);
                }
            }
        }
        REQUIRE(best_a == Approx(best_b).epsilon(0.03));
        REQUIRE(best_a == Approx(c).epsilon(0.05));
        REQUIRE(std::exp(res.log_det) == Approx(best_det).epsilon(0.02));
    }
    // ell_inf^1: the scalar sqrt(pi/2)
    {
        const auto res = lewis_optimal_measure(inf, 1, 1e-10, src);
        REQUIRE(res.converged);
        REQUIRE(res.J(0, 0) == Approx(std::sqrt(bounds::pi / 2.0)).epsilon(0.05));
    }
    REQUIRE_THROWS_AS(lewis_optimal_measure(1.0, 9, 1e-10, src), std::invalid_argument);
}

TEST_CASE("projection ratios") {
    const int m = 2;
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(m, m) * (std::sqrt(bounds::pi / 2.0) / m);

    REQUIRE(projection_norm_ratio(J, Eigen::MatrixXd::Identity(m, m), 1.0, 1000,
                                  src.stream("ratio-id"))
                .ratio == Approx(1.0).margin(1e-12));
    REQUIRE(projection_norm_ratio(J, Eigen::MatrixXd::Zero(m, m), 1.0, 1000,
                                  src.stream("ratio-zero"))
                .ratio == Approx(0.0).margin(1e-12));

    Eigen::MatrixXd notproj(2, 2);
    notproj << 1.0, 0.5, 0.0, 1.0;
    REQUIRE_THROWS_AS(projection_norm_ratio(J, notproj, 1.0, 10, src.stream("bad")),
                      std::invalid_argument);

    // coordinate projection of rank 1 on the ell_1-optimal measure: the
    // bound rank/m is attained
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
    P(0, 0) = 1.0;
    const auto r = projection_norm_ratio(J, P, 1.0, 200000, src.stream("ratio-coord"));
    REQUIRE(r.ratio == Approx(0.5).margin(0.01));
    const double slack = 3.0 * (r.projected.std_error + r.full.std_error) / r.full.mean;
    REQUIRE(r.ratio >= 0.5 - slack);

    // monotone comparison E||JPX|| <= E||JX|| + 3 se for random projections
    RandomStream g = src.stream("proj-rand");
    for (int rep = 0; rep < 8; ++rep) {
        Eigen::MatrixXd A(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) A(i, j) = g.normal();
        const Eigen::MatrixXd Q =
            Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ() *
            Eigen::MatrixXd::Identity(3, 2);
        const Eigen::MatrixXd Pr = Q * Q.transpose();
        Eigen::MatrixXd J3(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) J3(i, j) = g.normal();
        for (double p : {1.0, 2.0, inf}) {
            const auto rr =
                projection_norm_ratio(J3, Pr, p, 4000,
                                      src.stream("proj-mono", static_cast<uint64_t>(rep)));
            REQUIRE(rr.projected.mean <=
                    rr.full.mean + 3.0 * (rr.projected.std_error + rr.full.std_error));
        }
    }
}
