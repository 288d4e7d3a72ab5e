#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mcfa/rng.hpp"

namespace mcfa::smooth {

// Supplies exact partial derivatives D^alpha f(x); the declared class
// parameter p fixes which directional-derivative norm the caller certifies.
struct DerivativeOracle {
    std::function<double(const std::vector<int>&, const std::vector<double>&)> deriv;
    double p = 1.0;
};

struct TaylorApproximant {
    int d = 1, k = 0;
    std::vector<std::vector<int>> alphas;  // multi-indices |alpha|_1 <= k
    std::vector<double> coef;              // D^alpha f(x0) / alpha!
    long evaluations = 0;

    double eval(const std::vector<double>& x) const {
        double s = 0.0;
        for (std::size_t t = 0; t < alphas.size(); ++t) {
            double term = coef[t];
            for (int j = 0; j < d; ++j) {
                const double v = x[static_cast<std::size_t>(j)] - 0.5;
                for (int rep = 0; rep < alphas[t][static_cast<std::size_t>(j)]; ++rep) term *= v;
            }
            s += term;
        }
        return s;
    }
};

inline void enumerate_multi_indices(int d, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> alpha(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == d) {
            out.push_back(alpha);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            alpha[static_cast<std::size_t>(j)] = a;
            rec(j + 1, left - a);
        }
        alpha[static_cast<std::size_t>(j)] = 0;
    };
    rec(0, k);
}

// Degree-k Taylor polynomial at the cube center. Uses exactly binom(d+k, d)
// derivative values; worst-case sup error over the class with parameter p is
// (1/(k+1)!) (d^{1/p}/2)^{k+1}.
inline TaylorApproximant taylor_approximate(const DerivativeOracle& f, int k, int d) {
    if (k < 0) throw std::invalid_argument("taylor_approximate: k must be >= 0");
    TaylorApproximant out;
    out.d = d;
    out.k = k;
    enumerate_multi_indices(d, k, out.alphas);
    const std::vector<double> x0(static_cast<std::size_t>(d), 0.5);
    for (const auto& alpha : out.alphas) {
        double factorial = 1.0;
        for (int a : alpha)
            for (int i = 2; i <= a; ++i) factorial *= i;
        out.coef.push_back(f.deriv(alpha, x0) / factorial);
        ++out.evaluations;
    }
    return out;
}

inline double taylor_error_bound(int k, int d, double p) {
    double fact = 1.0;
    for (int i = 2; i <= k + 1; ++i) fact *= i;
    return std::pow(std::pow(static_cast<double>(d), 1.0 / p) / 2.0, k + 1) / fact;
}

struct TaylorComplexity {
    long k = 0;
    double n_bound = 0.0;  // exp(log(d+1) max{log(1/eps)/log 2, e d^{1/p}})
};

inline TaylorComplexity taylor_complexity(double eps, int d, double p) {
    if (!(eps > 0.0)) throw std::invalid_argument("taylor_complexity: eps must be > 0");
    const double dd = static_cast<double>(d);
    const double t = std::max(std::log(1.0 / eps) / std::log(2.0),
                              std::exp(1.0) * std::pow(dd, 1.0 / p));
    TaylorComplexity out;
    out.k = static_cast<long>(std::floor(t));
    out.n_bound = std::exp(std::log(dd + 1.0) * t);
    return out;
}

// binom(d+k, d), the exact information count of the degree-k method
inline double taylor_cardinality(int d, int k) {
    double b = 1.0;
    for (int i = 1; i <= d; ++i) b = b * (k + i) / i;
    return b;
}

// Optional finite-difference spot check of the class contract along random
// directions; reports the worst ratio, callers treat failures as warnings.
inline double membership_spot_check(const std::function<double(const std::vector<double>&)>& f,
                                    int d, double p, RandomStream& g, int trials = 50,
                                    double h = 1e-5) {
    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(d)), v(static_cast<std::size_t>(d));
    for (int t = 0; t < trials; ++t) {
        double vnorm = 0.0;
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] = 0.25 + 0.5 * g.uniform01();
            v[static_cast<std::size_t>(j)] = g.normal();
        }
        for (int j = 0; j < d; ++j) vnorm += std::pow(std::abs(v[static_cast<std::size_t>(j)]), p);
        vnorm = std::pow(vnorm, 1.0 / p);
        std::vector<double> xp = x, xm = x;
        for (int j = 0; j < d; ++j) {
            xp[static_cast<std::size_t>(j)] += h * v[static_cast<std::size_t>(j)];
            xm[static_cast<std::size_t>(j)] -= h * v[static_cast<std::size_t>(j)];
        }
        const double dfdv = (f(xp) - f(xm)) / (2.0 * h);
        worst = std::max(worst, std::abs(dfdv) / vnorm);
    }
    return worst;  // <= 1 + o(h) for certified members
}

} // namespace mcfa::smooth
