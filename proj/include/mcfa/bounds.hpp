#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcfa::bounds {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Normal distribution helpers

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi);
}

// Inverse normal CDF: Acklam's rational approximation polished with two
// Halley steps against normal_cdf, giving |error| < 1e-10 on (0,1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    for (int it = 0; it < 2; ++it) {
        const double e = normal_cdf(x) - p;
        const double u = e / normal_pdf(x);
        x -= u / (1 + x * u / 2);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Truncated-Gaussian factors

// [1 - (lambda + pi/(2(lambda-1))) exp(-(lambda-1)^2/pi)]_+ ; zero up to
// lambda = 3.0513, positive from 3.0514 on, increasing to 1.
inline double beta_factor(double lambda) {
    if (lambda <= 1.0)
        throw std::domain_error("beta_factor: requires lambda > 1");
    const double v =
        1.0 - (lambda + pi / (2.0 * (lambda - 1.0))) *
                  std::exp(-(lambda - 1.0) * (lambda - 1.0) / pi);
    return std::max(v, 0.0);
}

// [beta(lambda) - lambda exp(-(kappa-1)^2/pi)]_+ for two-norm truncation
inline double beta_tilde(double kappa, double lambda) {
    if (kappa <= 1.0)
        throw std::domain_error("beta_tilde: requires kappa > 1");
    const double v =
        beta_factor(lambda) -
        lambda * std::exp(-(kappa - 1.0) * (kappa - 1.0) / pi);
    return std::max(v, 0.0);
}

// 1 - 2 exp(-((1-r)/(2 alpha) - 1)^2 / pi); positive only while
// r < 1 - 2 alpha (1 + sqrt(pi log 2))
inline double nu_factor(double r, double alpha) {
    const double t = (1.0 - r) / (2.0 * alpha) - 1.0;
    return 1.0 - 2.0 * std::exp(-t * t / pi);
}

// the varying-cardinality variant has an extra mass-loss term
inline double nu_bar_factor(double r, double alpha) {
    const double s = 1.0 / alpha - 1.0;
    const double t = (1.0 - r) / (2.0 * alpha) - 1.0;
    return 0.5 - std::exp(-s * s / pi) - 2.0 * std::exp(-t * t / pi);
}

enum class BernsteinVariant { Ada, GaussAda, VaryCard, VaryCardGauss };

struct BernsteinConstParams {
    double r = 0.0;       // truncation radius in (0,1)
    double alpha = 0.0;   // expected norm scale in (0,1)
    double lambda = 0.0;  // auxiliary two-norm truncation level (> 1), Gauss variants only
};

// The lower-bound constants in front of (m-n)/m * b_m(S):
//   Ada            nu(r,a) * beta(r/a) * a              -> 0.06667 at (0.37, 0.0735)
//   GaussAda       nu(r,a) * beta~(r/a, lambda) * a     -> 0.06635 at (0.375, 0.073, 6.15)
//   VaryCard       1/2 nu_bar(r,a) * beta(r/a) * a      -> 0.0159  at (0.35, 0.07)
//   VaryCardGauss  1/2 nu_bar(r,a) * beta~(r/a, l) * a  -> 0.0158  at (0.36, 0.07, 6)
inline double bernstein_constant(const BernsteinConstParams& p, BernsteinVariant variant) {
    if (!(p.r > 0.0 && p.r < 1.0))
        throw std::domain_error("bernstein_constant: r must be in (0,1)");
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::domain_error("bernstein_constant: alpha must be in (0,1)");
    const double ratio = p.r / p.alpha;
    if (ratio <= 3.0513)
        throw std::domain_error(
            "bernstein_constant: r/alpha <= 3.0513, truncation factor vanishes");
    if (p.r >= 1.0 - 2.0 * p.alpha * (1.0 + std::sqrt(pi * std::log(2.0))))
        throw std::domain_error(
            "bernstein_constant: r too large, conditional-center mass bound vanishes");
    const bool gauss =
        variant == BernsteinVariant::GaussAda || variant == BernsteinVariant::VaryCardGauss;
    if (gauss && !(p.lambda > 1.0))
        throw std::domain_error("bernstein_constant: Gauss variants need lambda > 1");
    const double trunc = gauss ? beta_tilde(ratio, p.lambda) : beta_factor(ratio);
    switch (variant) {
        case BernsteinVariant::Ada:
        case BernsteinVariant::GaussAda:
            return nu_factor(p.r, p.alpha) * trunc * p.alpha;
        case BernsteinVariant::VaryCard:
        case BernsteinVariant::VaryCardGauss:
            return 0.5 * nu_bar_factor(p.r, p.alpha) * trunc * p.alpha;
    }
    throw std::logic_error("bernstein_constant: unknown variant");
}

// ---------------------------------------------------------------------------
// The monotone-approximation Monte Carlo lower bound

inline constexpr double berry_esseen_C0 = 0.4748;

struct MonoLBParams {
    double alpha = 0.0;  // lower slice offset, alpha < beta
    double beta = 0.0;   // upper slice offset
    double tau = 0.0;    // witness level t ~ tau sqrt(d)
    double lam = 0.0;    // relevant-mass fraction, in (0,1)
    double nu = 0.0;     // cardinality scale, n = nu 2^{tau sqrt(d)}
    double rho = 0.0;    // Bernoulli intensity, p = rho / binom(a,t)
    double d = 0.0;      // dimension
};

struct MonoLBResult {
    double eps_hat = 0.0;
    double r0 = 0.0;      // mass of the uncertain slice
    double r1 = 0.0;      // information-influence coefficient
    double sigma = 0.0;   // binom(b,t)/binom(a,t) bound
    double q0 = 0.0;      // lower bound on P{f(x)=0}
    double q = 0.0;       // min of the two conditional probabilities
    long a = 0, b = 0, t = 0;  // integer slice/witness levels
};

inline MonoLBResult mono_lb_eval(const MonoLBParams& p) {
    const double d = p.d;
    const double sd = std::sqrt(d);
    if (!(p.alpha < p.beta))
        throw std::domain_error("mono_lb_eval: requires alpha < beta");
    if (!(p.lam > 0.0 && p.lam < 1.0))
        throw std::domain_error("mono_lb_eval: requires lam in (0,1)");
    if (!(p.tau > 0.0 && p.tau < sd - 1.0 / sd))
        throw std::domain_error("mono_lb_eval: requires 0 < tau < sqrt(d) - 1/sqrt(d)");
    if (!(p.alpha - 2.0 * p.tau > -sd + 2.0 / sd))
        throw std::domain_error("mono_lb_eval: requires alpha - 2 tau > -sqrt(d) + 2/sqrt(d)");
    if (!(p.beta - p.alpha > 2.0 / sd))
        throw std::domain_error("mono_lb_eval: requires beta - alpha > 2/sqrt(d)");
    if (!(p.rho > 0.0))
        throw std::domain_error("mono_lb_eval: requires rho > 0");

    const double C1 = 1.0 / std::sqrt(2.0 * pi) + 2.0 * berry_esseen_C0;

    MonoLBResult out;
    out.a = static_cast<long>(std::ceil(d / 2.0 + p.alpha * sd / 2.0));
    out.b = static_cast<long>(std::floor(d / 2.0 + p.beta * sd / 2.0));
    out.t = static_cast<long>(std::ceil(p.tau * sd));

    out.r0 = normal_cdf(p.beta) - normal_cdf(p.alpha) - 2.0 * berry_esseen_C0 / sd;

    const double kappa_tau = 1.0 / std::sqrt(1.0 - p.tau / sd - 1.0 / d);
    const double C_abt = normal_cdf(p.beta - p.tau) - normal_cdf(p.alpha - p.tau);
    const double kappa_at = 1.0 / (1.0 + (p.alpha - 2.0 * p.tau) / sd);
    const double K_abt = (p.beta - p.alpha) / (sd + p.alpha - 2.0 * p.tau);
    out.sigma = std::exp((p.beta - p.alpha) * p.tau * kappa_at + K_abt);
    out.r1 = (out.sigma / (1.0 - p.lam) + 1.0) * (C_abt + C1 / sd) * kappa_tau;

    // binom(a,t) >= gamma; for huge d the power overflows to +inf, which
    // simply drives the correction factor to 1
    const double gamma_at = std::pow((sd + p.alpha) / (2.0 * (p.tau + 1.0 / sd)), p.tau * sd);
    const double frac = std::isinf(gamma_at) ? 0.0 : p.rho / gamma_at;
    if (frac >= 1.0)
        throw std::domain_error("mono_lb_eval: requires rho < binom(a,t) lower bound");
    const double kappa_rg = 0.5 + 0.5 / (1.0 - frac);
    out.q0 = std::exp(-p.rho * out.sigma * kappa_rg);
    out.q = std::min(1.0 - std::exp(-p.rho * p.lam), out.q0);
    out.eps_hat = std::max(out.r0 - p.nu * out.r1, 0.0) * out.q;
    return out;
}

// Parameter sets achieving eps_hat > 1/30 at the published (d0, n0, tau)
// triples; alpha/beta/lam/rho were tuned numerically for each row.
struct MonoLBTableRow {
    long d0 = 0;
    long n0 = 0;
    double tau = 0.0;
    MonoLBParams params;
    double eps_hat = 0.0;
    bool pass = false;
};

inline std::vector<MonoLBTableRow> mono_lb_table_check() {
    struct Entry {
        long d0;
        long n0;
        double tau;
        double alpha, beta, lam, rho;
    };
    static const Entry entries[] = {
        {51, 1, 1.0696, -0.3756705501, 0.5891781347, 0.6981834472, 0.2834330387},
        {100, 108, 1.4795, -0.3363257132, 0.4640827109, 0.7764555514, 0.2585922399},
        {200, 498098, 1.9796, -0.2785546452, 0.3952510893, 0.8709542097, 0.2347650015},
    };
    std::vector<MonoLBTableRow> rows;
    for (const auto& e : entries) {
        MonoLBTableRow row;
        row.d0 = e.d0;
        row.n0 = e.n0;
        row.tau = e.tau;
        row.params = {e.alpha, e.beta, e.tau, e.lam,
                      static_cast<double>(e.n0) *
                          std::exp2(-e.tau * std::sqrt(static_cast<double>(e.d0))),
                      e.rho, static_cast<double>(e.d0)};
        row.eps_hat = mono_lb_eval(row.params).eps_hat;
        row.pass = row.eps_hat > 1.0 / 30.0;
        rows.push_back(row);
    }
    return rows;
}

// n(d) = n0 2^{tau (sqrt(d) - sqrt(d0))}, the cross-dimension prediction
inline double mono_lb_predict_n(long n0, double tau, double d0, double d) {
    return static_cast<double>(n0) * std::exp2(tau * (std::sqrt(d) - std::sqrt(d0)));
}

// ---------------------------------------------------------------------------
// The limiting exponent of the lower-bound technique

struct AsymptoticExponent {
    double theta_star = 0.0;
    double value = 0.0;      // ~ 0.1586
    double value_log2 = 0.0; // ~ 0.1100
};

// maximize sqrt(2/pi) theta max_rho min{1-e^-rho, e^{-rho e^{2 theta}}};
// the inner max sits where both branches intersect (one grows, one decays)
inline AsymptoticExponent asymptotic_exponent() {
    auto inner = [](double theta) {
        const double E = std::exp(2.0 * theta);
        double lo = 1e-14, hi = 50.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((1.0 - std::exp(-mid)) < std::exp(-mid * E))
                lo = mid;
            else
                hi = mid;
        }
        return 1.0 - std::exp(-0.5 * (lo + hi));
    };
    auto objective = [&](double theta) { return std::sqrt(2.0 / pi) * theta * inner(theta); };
    // golden-section search
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.01, hi = 5.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        }
    }
    AsymptoticExponent out;
    out.theta_star = 0.5 * (lo + hi);
    out.value = objective(out.theta_star);
    out.value_log2 = out.value * std::log(2.0);
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form curse-of-dimensionality bounds

// deterministic error bound 1/2 (1 - n 2^{-d}) for real-valued monotone inputs
inline double curse_mono_det(int d, double n) {
    return 0.5 * (1.0 - n * std::exp2(-static_cast<double>(d)));
}

// Boolean variant 1/2 (1 - n 2^{-floor(d/2)})
inline double curse_mono_boolean_det(int d, double n) {
    return 0.5 * (1.0 - n * std::exp2(-static_cast<double>(d / 2)));
}

// combined deterministic complexity bound, valid for 0 < eps <= 1/4
inline double curse_mono_combined(int d, double eps) {
    if (!(eps > 0.0 && eps <= 0.25))
        throw std::domain_error("curse_mono_combined: requires eps in (0, 1/4]");
    const double dd = static_cast<double>(d);
    if (eps >= 1.0 / (4.0 * (dd + 1.0)))
        return std::exp2(dd + std::floor(1.0 / (4.0 * eps)) - 2.0);
    return std::exp2(dd * (1.0 + std::log2(std::floor(1.0 / (4.0 * eps * dd)))) - 1.0);
}

// smooth-class Monte Carlo complexity bound 2^{floor(d^{1/p}/3) - 1}, eps <= 1/30
inline double curse_smooth_lb(double p, int d) {
    if (!(p >= 1.0))
        throw std::domain_error("curse_smooth_lb: requires p >= 1");
    return std::exp2(std::floor(std::pow(static_cast<double>(d), 1.0 / p) / 3.0) - 1.0);
}

// counting bound 2^{d-1}/sqrt(d) - 2^d eps log2(e/eps) - 1 for the
// (eps/2)-complexity of Boolean monotone approximation
inline double curse_counting(int d, double eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::domain_error("curse_counting: requires eps in (0,1]");
    const double dd = static_cast<double>(d);
    return std::exp2(dd - 1.0) / std::sqrt(dd) -
           std::exp2(dd) * eps * std::log2(std::exp(1.0) / eps) - 1.0;
}

// published error bound for n >= d and large d; exposed for inspection only,
// meaningful roughly from d = 8799 on
inline double blum_burch_langford_bound(int d, double n) {
    const double C = 2.9895;
    return (1.0 - std::exp(-n / 4.0)) *
           (0.5 - C * std::log(6.0 * d * n) / std::sqrt(static_cast<double>(d)));
}

// rho-dependent constant of the large-m refinement, converging to 1/3;
// delta(rho) = delta0/sqrt(rho). Both factors are probability masses, so
// they clamp at zero where the guarantee is void (small rho).
inline double improved_constant_c(double rho, double delta0 = 1.0) {
    const double delta = delta0 / std::sqrt(rho);
    const double f1 = std::max(0.0, 1.0 - 2.0 * std::exp(-delta * delta * rho * rho / 2.0));
    const double f2 =
        std::max(0.0, 1.0 - (1.0 + delta + 4.0 / (delta * rho * rho)) *
                                std::exp(-delta * delta * rho * rho / 8.0));
    return f1 * f2 / (3.0 * (1.0 + delta));
}

// the operator-norm lower bound sqrt(log m)/5 used with it
inline double optimal_operator_rho_lower(int m) {
    return std::sqrt(std::log(static_cast<double>(m))) / 5.0;
}

// ---------------------------------------------------------------------------
// Berry-Esseen for binomial slices and exact combinatorial inequalities

using bigint = boost::multiprecision::cpp_int;

inline bigint binom_exact(long d, long k) {
    if (k < 0 || k > d) return 0;
    bigint r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= d - k + i;
        r /= i;
    }
    return r;
}

inline double log_binom(double d, double k) {
    return std::lgamma(d + 1.0) - std::lgamma(k + 1.0) - std::lgamma(d - k + 1.0);
}

struct BerryEsseenBinom {
    double exact_sum = 0.0;   // 2^{-d} sum_{k=a}^{b} binom(d,k)
    double lower_bound = 0.0; // Phi(beta) - Phi(alpha) - 2 C0 / sqrt(d)
    long a = 0, b = 0;
};

inline BerryEsseenBinom berry_esseen_binom(int d, double alpha, double beta) {
    if (!(alpha < beta))
        throw std::domain_error("berry_esseen_binom: requires alpha < beta");
    BerryEsseenBinom out;
    const double dd = static_cast<double>(d);
    const double sd = std::sqrt(dd);
    out.a = static_cast<long>(std::ceil(dd / 2.0 + alpha * sd / 2.0));
    out.b = static_cast<long>(std::floor(dd / 2.0 + beta * sd / 2.0));
    double sum = 0.0;
    for (long k = std::max(out.a, 0L); k <= std::min(out.b, static_cast<long>(d)); ++k)
        sum += std::exp(log_binom(dd, static_cast<double>(k)) - dd * std::log(2.0));
    out.exact_sum = sum;
    out.lower_bound = normal_cdf(beta) - normal_cdf(alpha) - 2.0 * berry_esseen_C0 / sd;
    return out;
}

struct BinomInequalities {
    bigint partial_sum;        // sum_{l<=k} binom(d,l)
    double partial_sum_bound;  // (e d / k)^k
    bigint central;            // binom(d, floor(d/2))
    double central_lower;      // 1/2 2^d / sqrt(d)
    double central_upper;      // sqrt(2/pi) 2^d / sqrt(d)
    bool sum_ok = false;
    bool central_ok = false;
};

inline BinomInequalities binom_inequalities(int d, int k) {
    if (k < 1 || k > d)
        throw std::domain_error("binom_inequalities: requires 1 <= k <= d");
    BinomInequalities out;
    out.partial_sum = 0;
    for (long l = 0; l <= k; ++l) out.partial_sum += binom_exact(d, l);
    const double dd = static_cast<double>(d);
    out.partial_sum_bound = std::pow(std::exp(1.0) * dd / k, static_cast<double>(k));
    out.central = binom_exact(d, d / 2);
    out.central_lower = 0.5 * std::exp2(dd) / std::sqrt(dd);
    out.central_upper = std::sqrt(2.0 / pi) * std::exp2(dd) / std::sqrt(dd);
    out.sum_ok = static_cast<double>(out.partial_sum) < out.partial_sum_bound;
    out.central_ok = bigint(std::ceil(out.central_lower)) <= out.central &&
                     static_cast<double>(out.central) <= out.central_upper;
    return out;
}

} // namespace mcfa::bounds
