#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcfa/rkhs.hpp"
#include "mcfa/seqspace.hpp"

using namespace mcfa;
using namespace mcfa::seqspace;
using Catch::Approx;

namespace {
const RandomSource src{31337};
}

TEST_CASE("deterministic truncation error") {
    REQUIRE(det_truncation_error(4, 3, inf, 1.0) == Approx(1.0).margin(1e-15));
    REQUIRE(det_truncation_error(7, 7, 3.0, 1.0) == 0.0);
    REQUIRE(det_truncation_error(8, 4, 2.0, 2.0) == Approx(1.0).margin(1e-15));
    REQUIRE_THROWS_AS(det_truncation_error(8, 4, 1.0, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(det_truncation_error(8, 9, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("exact ell_2 -> ell_inf error") {
    REQUIRE(smolyak_error(2, 1) == Approx(std::sqrt(0.5)).margin(1e-15));
    REQUIRE(smolyak_error(5, 5) == 0.0);
    REQUIRE(smolyak_error(1 << 10, 1 << 9) == Approx(std::sqrt(0.5)).margin(1e-15));
    // the diagonal-operator bound with constant weights reproduces it
    std::vector<double> ones(16, 1.0);
    for (int n = 0; n < 16; ++n)
        REQUIRE(rkhs::diag_operator_lower_bound(ones, n) ==
                Approx(smolyak_error(16, n)).margin(1e-12));
}

TEST_CASE("fundamental method: linearity, unbiasedness, second moment") {
    RandomStream g = src.stream("fund");
    // x = 0 -> output 0 exactly
    {
        const auto [out, info] = fundamental_mc_apply(Eigen::VectorXd::Zero(5), 3, g);
        REQUIRE(out.norm() == 0.0);
    }
    // superposition for a fixed realization
    {
        RandomStream g1 = src.stream("fund-lin");
        RandomStream g2 = src.stream("fund-lin");
        RandomStream g3 = src.stream("fund-lin");
        Eigen::VectorXd x(4), y(4);
        x << 1, -2, 0.5, 3;
        y << 0.3, 0.1, -1, 2;
        const auto rx = fundamental_mc_apply(x, 3, g1).first;
        const auto ry = fundamental_mc_apply(y, 3, g2).first;
        const auto rxy = fundamental_mc_apply(x + y, 3, g3).first;
        REQUIRE((rx + ry - rxy).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    // second moment 1 + (m+1)/n
    {
        const int m = 3, n = 2;
        REQUIRE(fundamental_mc_second_moment(m, n) == Approx(std::sqrt(3.0)).margin(1e-15));
        Eigen::VectorXd x(m);
        x << 1, 0, 0;
        RunningStats acc;
        RandomStream gg = src.stream("fund-mom");
        for (int rep = 0; rep < 100000; ++rep)
            acc.add(fundamental_mc_apply(x, n, gg).first.squaredNorm());
        REQUIRE(acc.mean() == Approx(3.0).epsilon(0.02));
    }
    // componentwise unbiasedness at m=8, n=4
    {
        const int m = 8, n = 4;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
        x[0] = 1.0;
        std::vector<RunningStats> acc(m);
        RandomStream gg = src.stream("fund-unbias");
        for (int rep = 0; rep < 100000; ++rep) {
            const auto out = fundamental_mc_apply(x, n, gg).first;
            for (int j = 0; j < m; ++j) acc[static_cast<std::size_t>(j)].add(out[j]);
        }
        for (int j = 0; j < m; ++j) {
            const auto& a = acc[static_cast<std::size_t>(j)];
            REQUIRE(std::abs(a.mean() - x[j]) <= 3.0 * a.std_error());
        }
    }
}

TEST_CASE("error curve: bound, consistency, slope") {
    const auto curve = mc_error_curve({64, 2.0, inf}, {4, 16, 64}, 120, src);
    for (const auto& pt : curve.points) {
        INFO("n=" << pt.n);
        REQUIRE(pt.worst_mean_error <= pt.bound + 3.0 * pt.std_error);
    }
    REQUIRE(curve.slope == Approx(-0.5).margin(0.075));
    // error decreases with n
    REQUIRE(curve.points[0].worst_mean_error > curve.points[1].worst_mean_error);
    REQUIRE(curve.points[1].worst_mean_error > curve.points[2].worst_mean_error);
    // large n drives the error far below the initial error
    const auto big = mc_error_curve({8, 2.0, 2.0}, {256}, 40, src);
    REQUIRE(big.points[0].worst_mean_error < 0.3);
    REQUIRE_THROWS_AS(mc_error_curve({8, 1.0, 2.0}, {4}, 10, src), std::invalid_argument);
}

TEST_CASE("known Bernstein numbers") {
    REQUIRE(bernstein_closed_form({16, 1.0, 2.0}, 4).value() == Approx(0.5).margin(1e-15));
    REQUIRE(bernstein_closed_form({16, 2.0, 2.0}, 7).value() == 1.0);
    REQUIRE(bernstein_closed_form({9, 2.0, inf}, 9).value() ==
            Approx(1.0 / 3.0).margin(1e-15));
    REQUIRE(!bernstein_closed_form({9, 2.0, inf}, 4).has_value());
    REQUIRE(!bernstein_closed_form({9, 3.0, inf}, 9).has_value());

    // full-dimension (2,inf) matches the exact error formula at n = M-1
    REQUIRE(bernstein_closed_form({9, 2.0, inf}, 9).value() ==
            Approx(smolyak_error(9, 8)).margin(1e-15));

    // brute-force lower-bound oracle at M=3: over random unit vectors, the
    // worst ratio ||x||_inf/||x||_2 approaches 1/sqrt(3) from above
    RandomStream g = src.stream("bern-brute");
    double worst_ratio = 1.0;
    for (int it = 0; it < 20000; ++it) {
        const auto v = gauss::sample_std_gaussian(3, g);
        worst_ratio = std::min(worst_ratio, v.lpNorm<Eigen::Infinity>() / v.norm());
    }
    const double b3 = bernstein_closed_form({3, 2.0, inf}, 3).value();
    REQUIRE(worst_ratio >= b3 - 1e-12);
    REQUIRE(worst_ratio <= b3 + 0.05);
}

TEST_CASE("homogeneous coordinate method") {
    Eigen::VectorXd x(4);
    x << 0.25, 0.25, 0.25, 0.25;

    RandomStream g = src.stream("hom");
    // nbar = m returns x exactly
    REQUIRE((homogeneous_coordinate_method(x, 4.0, g).output - x).norm() == 0.0);
    // nbar = 0 returns zero
    REQUIRE(homogeneous_coordinate_method(x, 0.0, g).output.norm() == 0.0);
    REQUIRE_THROWS_AS(homogeneous_coordinate_method(x, 5.0, g), std::invalid_argument);

    // expected error (m - nbar)/m ||x||_1 and expected cardinality nbar
    RunningStats err, card;
    RandomStream gg = src.stream("hom-reps");
    for (int rep = 0; rep < 100000; ++rep) {
        const auto res = homogeneous_coordinate_method(x, 2.0, gg);
        err.add((x - res.output).lpNorm<1>());
        card.add(static_cast<double>(res.kept));
    }
    REQUIRE(std::abs(err.mean() - 0.5) <= 3.0 * err.std_error());
    REQUIRE(std::abs(card.mean() - 2.0) <= 3.0 * card.std_error());
}
