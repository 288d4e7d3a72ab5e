#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcfa/bounds.hpp"

using namespace mcfa::bounds;
using Catch::Approx;

TEST_CASE("normal cdf and quantile") {
    REQUIRE(normal_cdf(0.0) == Approx(0.5).margin(1e-15));
    REQUIRE(normal_cdf(1.959963984540054) == Approx(0.975).margin(1e-12));
    for (double p : {1e-8, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9}) {
        const double x = normal_quantile(p);
        REQUIRE(normal_cdf(x) == Approx(p).margin(1e-10));
    }
    REQUIRE_THROWS_AS(normal_quantile(0.0), std::domain_error);
}

TEST_CASE("truncation factor beta") {
    REQUIRE(beta_factor(3.0513) == 0.0);
    REQUIRE(beta_factor(3.0514) > 0.0);
    REQUIRE(beta_factor(50.0) > 0.999);
    REQUIRE_THROWS_AS(beta_factor(1.0), std::domain_error);
    // monotone increasing past the kink
    double prev = 0.0;
    for (double lam = 3.06; lam < 12.0; lam += 0.25) {
        const double v = beta_factor(lam);
        REQUIRE(v >= prev);
        prev = v;
    }
}

TEST_CASE("lower-bound constants reproduce the published values") {
    const double c = bernstein_constant({0.37, 0.0735, 0.0}, BernsteinVariant::Ada);
    REQUIRE(c == Approx(0.06667).margin(1e-4));
    REQUIRE(c > 1.0 / 15.0);

    const double cp = bernstein_constant({0.375, 0.073, 6.15}, BernsteinVariant::GaussAda);
    REQUIRE(cp == Approx(0.06635).margin(1e-4));

    const double cb = bernstein_constant({0.35, 0.07, 0.0}, BernsteinVariant::VaryCard);
    REQUIRE(cb == Approx(0.0159).margin(1e-3));
    REQUIRE(cb > 1.0 / 63.0);

    const double cbp = bernstein_constant({0.36, 0.07, 6.0}, BernsteinVariant::VaryCardGauss);
    REQUIRE(cbp == Approx(0.0158).margin(1e-3));
    REQUIRE(cbp > 1.0 / 64.0);
}

TEST_CASE("window violations are explicit errors") {
    // r/alpha below the truncation threshold
    REQUIRE_THROWS_AS(bernstein_constant({0.2, 0.07, 0.0}, BernsteinVariant::Ada),
                      std::domain_error);
    // r so large that the center-mass factor dies
    REQUIRE_THROWS_AS(bernstein_constant({0.95, 0.0735, 0.0}, BernsteinVariant::Ada),
                      std::domain_error);
    REQUIRE_THROWS_AS(bernstein_constant({0.375, 0.073, 0.5}, BernsteinVariant::GaussAda),
                      std::domain_error);
}

TEST_CASE("constant is continuous inside its window") {
    const double base = bernstein_constant({0.37, 0.0735, 0.0}, BernsteinVariant::Ada);
    const double dr = bernstein_constant({0.3701, 0.0735, 0.0}, BernsteinVariant::Ada);
    const double da = bernstein_constant({0.37, 0.07351, 0.0}, BernsteinVariant::Ada);
    REQUIRE(std::abs(dr - base) < 1e-3);
    REQUIRE(std::abs(da - base) < 1e-3);
}

TEST_CASE("monotone lower-bound pipeline") {
    MonoLBParams p;
    p.alpha = -0.33794;
    p.beta = 0.46332;
    p.tau = 1.47566;
    p.lam = 0.77399;
    p.rho = 0.25960;
    p.d = 100.0;
    p.nu = 108.0 * std::exp2(-p.tau * 10.0);
    const auto res = mono_lb_eval(p);
    REQUIRE(res.eps_hat == Approx(0.0333335).margin(1e-6));
    REQUIRE(res.eps_hat > 1.0 / 30.0);
    REQUIRE(res.a == 49);
    REQUIRE(res.b == 52);
    REQUIRE(res.t == 15);

    SECTION("nu -> 0 recovers r0 q") {
        MonoLBParams q = p;
        q.nu = 0.0;
        const auto r = mono_lb_eval(q);
        REQUIRE(r.eps_hat == Approx(r.r0 * r.q).margin(1e-15));
    }

    SECTION("huge d drives r0 to the plain normal mass") {
        MonoLBParams q = p;
        q.d = 1e8;
        const auto r = mono_lb_eval(q);
        const double limit = normal_cdf(p.beta) - normal_cdf(p.alpha);
        REQUIRE(std::abs(r.r0 - limit) < 1e-3);
    }

    SECTION("monotone nondecreasing in d") {
        double prev = 0.0;
        for (double d : {100.0, 120.0, 150.0, 200.0, 400.0, 1000.0, 10000.0}) {
            MonoLBParams q = p;
            q.d = d;
            const double e = mono_lb_eval(q).eps_hat;
            REQUIRE(e >= prev);
            prev = e;
        }
    }

    SECTION("side conditions are explicit errors") {
        MonoLBParams q = p;
        q.beta = p.alpha - 0.1;
        REQUIRE_THROWS_AS(mono_lb_eval(q), std::domain_error);
        q = p;
        q.tau = 11.0;  // above sqrt(100) - 1/sqrt(100)
        REQUIRE_THROWS_AS(mono_lb_eval(q), std::domain_error);
        q = p;
        q.lam = 1.5;
        REQUIRE_THROWS_AS(mono_lb_eval(q), std::domain_error);
    }
}

TEST_CASE("published table rows all clear 1/30") {
    const auto rows = mono_lb_table_check();
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[0].d0 == 51);
    REQUIRE(rows[1].d0 == 100);
    REQUIRE(rows[2].d0 == 200);
    for (const auto& row : rows) {
        INFO("d0=" << row.d0 << " eps_hat=" << row.eps_hat);
        REQUIRE(row.pass);
        REQUIRE(row.eps_hat > 1.0 / 30.0);
    }
    REQUIRE(mono_lb_predict_n(108, 1.4795, 100.0, 200.0) > 7554.0);
}

TEST_CASE("asymptotic exponent of the lower-bound technique") {
    const auto res = asymptotic_exponent();
    REQUIRE(res.value == Approx(0.1586).margin(1e-3));
    REQUIRE(res.value_log2 == Approx(0.1100).margin(1e-3));
    REQUIRE(res.theta_star > 0.0);
}

TEST_CASE("curse formulas") {
    REQUIRE(curse_mono_det(10, 512.0) == Approx(0.25).margin(1e-15));
    REQUIRE(curse_smooth_lb(1.0, 9) == Approx(4.0).margin(1e-12));
    // counting bound with eps log2(e/eps) = 2^-6 at d = 20
    double lo = 1e-6, hi = 0.2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * std::log2(std::exp(1.0) / mid) < std::exp2(-6.0) ? lo : hi) = mid;
    }
    const double eps = 0.5 * (lo + hi);
    const double counting = curse_counting(20, eps);
    REQUIRE(counting > 0.0);
    REQUIRE(counting ==
            Approx(std::exp2(19.0) / std::sqrt(20.0) - std::exp2(20.0) * std::exp2(-6.0) - 1.0)
                .epsilon(1e-6));
    REQUIRE_THROWS_AS(curse_counting(20, 2.0), std::domain_error);
    REQUIRE_THROWS_AS(curse_mono_combined(4, 0.3), std::domain_error);
    REQUIRE(curse_mono_combined(10, 0.25) == Approx(std::exp2(9.0)).margin(1e-9));
}

TEST_CASE("berry-esseen binomial slice") {
    const auto r = berry_esseen_binom(100, -0.33794, 0.46332);
    REQUIRE(r.exact_sum >= r.lower_bound);
    REQUIRE(r.lower_bound ==
            Approx(normal_cdf(0.46332) - normal_cdf(-0.33794) - 0.09496).margin(1e-10));
    // full sweep
    for (int d = 10; d <= 200; ++d) {
        const auto s = berry_esseen_binom(d, -0.33794, 0.46332);
        REQUIRE(s.exact_sum >= s.lower_bound);
    }
    // nearly empty interval: bound trivially negative
    const auto t = berry_esseen_binom(50, 0.1, 0.100001);
    REQUIRE(t.lower_bound < 0.0);
    REQUIRE(t.exact_sum >= t.lower_bound);
    REQUIRE_THROWS_AS(berry_esseen_binom(10, 0.5, 0.4), std::domain_error);
}

TEST_CASE("combinatorial inequalities hold exactly") {
    {
        const auto r = binom_inequalities(4, 4);
        REQUIRE(r.partial_sum == 16);
        REQUIRE(r.partial_sum_bound == Approx(std::exp(4.0)).epsilon(1e-12));
        REQUIRE(r.sum_ok);
    }
    {
        const auto r = binom_inequalities(10, 3);
        REQUIRE(r.partial_sum == 176);
        REQUIRE(r.partial_sum_bound == Approx(743.9).margin(0.1));  // (10e/3)^3
        REQUIRE(r.sum_ok);
    }
    {
        const auto r = binom_inequalities(1, 1);
        REQUIRE(r.central == 1);
        REQUIRE(r.central_ok);  // boundary case 1/2 * 2/1 = 1 <= 1
    }
    for (int d = 1; d <= 60; ++d)
        for (int k = 1; k <= d; ++k) {
            const auto r = binom_inequalities(d, k);
            INFO("d=" << d << " k=" << k);
            REQUIRE(r.sum_ok);
            REQUIRE(r.central_ok);
        }
}

TEST_CASE("auxiliary formulas exposed without assertions") {
    // the published error bound needs d in the thousands to turn positive
    REQUIRE(blum_burch_langford_bound(100, 100.0) < 0.0);
    REQUIRE(blum_burch_langford_bound(20000, 20000.0) > 0.0);
    // c(rho) climbs toward 1/3; at rho_m = sqrt(log m)/5 for desk-scale m
    // there is no positive guarantee yet
    REQUIRE(improved_constant_c(optimal_operator_rho_lower(100)) == 0.0);
    REQUIRE(improved_constant_c(1e3) > 0.0);
    REQUIRE(improved_constant_c(1e3) < 1.0 / 3.0);
    REQUIRE(improved_constant_c(1e6) > 0.32);
    REQUIRE(improved_constant_c(1e6) < 1.0 / 3.0);
}
