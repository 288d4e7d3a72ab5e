#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mcfa/bounds.hpp"
#include "mcfa/rng.hpp"
#include "mcfa/stats.hpp"

namespace mcfa::gauss {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct GaussVecSpec {
    int m = 1;        // dimension, >= 1
    double p = 2.0;   // norm exponent in [1, inf]
};

inline Eigen::VectorXd sample_std_gaussian(int m, RandomStream& g) {
    if (m < 1) throw std::invalid_argument("sample_std_gaussian: m must be >= 1");
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x[i] = g.normal();
    return x;
}

inline double vector_norm(const Eigen::VectorXd& x, double p) {
    if (p == inf) return x.lpNorm<Eigen::Infinity>();
    if (p == 1.0) return x.lpNorm<1>();
    if (p == 2.0) return x.norm();
    if (!(p >= 1.0)) throw std::invalid_argument("vector_norm: p must be >= 1");
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
    return std::pow(s, 1.0 / p);
}

inline NormEstimate expected_norm_estimate(const GaussVecSpec& spec, long reps, RandomStream g) {
    if (spec.m < 1) throw std::invalid_argument("expected_norm_estimate: m must be >= 1");
    if (reps < 2) throw std::invalid_argument("expected_norm_estimate: reps must be >= 2");
    RunningStats acc;
    for (long i = 0; i < reps; ++i)
        acc.add(vector_norm(sample_std_gaussian(spec.m, g), spec.p));
    return acc.estimate();
}

// Constants of the norm-expectation bounds.
inline double moment_growth_K() {                 // sup_q (E|X|^q)^{1/q} / sqrt(q)
    const double e = std::exp(1.0);
    return std::sqrt(2.0 * bounds::pi / (e * (2.0 * bounds::pi - e)));
}
inline double tail_alpha() {                      // -Phi^{-1}(1/(2e)) = 0.90045...
    return -bounds::normal_quantile(1.0 / (2.0 * std::exp(1.0)));
}
inline double max_norm_lower_c() {                // alpha (1 - exp(-1/e)) = 0.277159...
    return tail_alpha() * (1.0 - std::exp(-std::exp(-1.0)));
}
inline double max_norm_upper_C() {                // K e = 2.18884...
    return moment_growth_K() * std::exp(1.0);
}

struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// sqrt(2/pi) m^{1/p} <= E||X||_p <= K sqrt(p) m^{1/p} for finite p;
// c sqrt(1+log m) <= E||X||_inf <= C sqrt(1+log m)
inline NormBounds gauss_norm_bounds(const GaussVecSpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("gauss_norm_bounds: m must be >= 1");
    const double m = static_cast<double>(spec.m);
    if (spec.p == inf) {
        const double s = std::sqrt(1.0 + std::log(m));
        return {max_norm_lower_c() * s, max_norm_upper_C() * s};
    }
    if (!(spec.p >= 1.0)) throw std::invalid_argument("gauss_norm_bounds: p must be >= 1");
    const double mp = std::pow(m, 1.0 / spec.p);
    return {std::sqrt(2.0 / bounds::pi) * mp, moment_growth_K() * std::sqrt(spec.p) * mp};
}

// ---------------------------------------------------------------------------
// Operator norm ell_2^m -> ell_p^M.
//   p = 2:   spectral norm
//   p = inf: max row 2-norm
//   p = 1:   exact sign enumeration max_eps ||J^T eps||_2 for <= 20 rows,
//            otherwise the upper bound sum_i ||row_i||_2
//   other p: random-direction search (estimate from below, then reported as is)
inline double op_norm_2_to(const Eigen::MatrixXd& J, double p,
                           RandomStream* search = nullptr, int search_iters = 2000) {
    if (p == 2.0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        return svd.singularValues()[0];
    }
    if (p == inf) {
        double best = 0.0;
        for (int i = 0; i < J.rows(); ++i) best = std::max(best, J.row(i).norm());
        return best;
    }
    if (p == 1.0) {
        const int rows = static_cast<int>(J.rows());
        if (rows <= 20) {
            double best = 0.0;
            Eigen::VectorXd eps(rows);
            const std::uint64_t half = 1ULL << (rows - 1);
            for (std::uint64_t mask = 0; mask < half; ++mask) {
                for (int i = 0; i < rows; ++i)
                    eps[i] = (mask >> i) & 1 ? -1.0 : 1.0;
                best = std::max(best, (J.transpose() * eps).norm());
            }
            return best;
        }
        double s = 0.0;
        for (int i = 0; i < J.rows(); ++i) s += J.row(i).norm();
        return s;  // valid upper bound
    }
    if (!search) throw std::invalid_argument("op_norm_2_to: general p needs a search stream");
    double best = 0.0;
    const int m = static_cast<int>(J.cols());
    for (int it = 0; it < search_iters; ++it) {
        Eigen::VectorXd x = sample_std_gaussian(m, *search);
        x.normalize();
        best = std::max(best, vector_norm(J * x, p));
    }
    return best;
}

struct DeviationResult {
    double empirical_tail = 0.0;  // fraction of replicates above lambda * mean
    double bound = 0.0;           // exp(-(lambda-1)^2/pi)
    double sharper_bound = 0.0;   // exp(-(lambda-1)^2 rho^2 / 2)
    double rho_hat = 0.0;         // estimated E||JX|| / ||J||_{2->p}
    double mean_norm = 0.0;
};

inline DeviationResult deviation_tail(const Eigen::MatrixXd& J, double p, double lambda,
                                      long reps, RandomStream g) {
    if (!(lambda > 1.0)) throw std::invalid_argument("deviation_tail: requires lambda > 1");
    if (J.norm() == 0.0) throw std::invalid_argument("deviation_tail: J must be nonzero");
    const int m = static_cast<int>(J.cols());
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(reps));
    RunningStats acc;
    for (long i = 0; i < reps; ++i) {
        const double v = vector_norm(J * sample_std_gaussian(m, g), p);
        norms.push_back(v);
        acc.add(v);
    }
    DeviationResult out;
    out.mean_norm = acc.mean();
    long count = 0;
    for (double v : norms)
        if (v > lambda * out.mean_norm) ++count;
    out.empirical_tail = static_cast<double>(count) / static_cast<double>(reps);
    out.bound = std::exp(-(lambda - 1.0) * (lambda - 1.0) / bounds::pi);
    const double opn = op_norm_2_to(J, p, &g);
    out.rho_hat = out.mean_norm / opn;
    out.sharper_bound =
        std::exp(-(lambda - 1.0) * (lambda - 1.0) * out.rho_hat * out.rho_hat / 2.0);
    return out;
}

// ---------------------------------------------------------------------------
// Determinant-maximal Gaussian measures.
//
// Maximizes log|det J| subject to E||J X||_p = 1, the expectation taken over
// a frozen sample of common random vectors so the objective is deterministic.
// Ascent direction is the gradient J^{-T} of log det, renormalizing after
// every step; the step is halved whenever the move does not improve.

struct LewisResult {
    Eigen::MatrixXd J;
    bool converged = false;
    int iterations = 0;
    double log_det = 0.0;
    double norm_value = 0.0;  // frozen-sample estimate of E||JX||_p, ~1
};

class FrozenSample {
public:
    FrozenSample(int m, int count, RandomStream g) : x_(m, count) {
        for (int j = 0; j < count; ++j)
            for (int i = 0; i < m; ++i) x_(i, j) = g.normal();
    }
    double mean_norm(const Eigen::MatrixXd& J, double p) const {
        const Eigen::MatrixXd y = J * x_;
        double s = 0.0;
        for (int j = 0; j < y.cols(); ++j) s += vector_norm(y.col(j), p);
        return s / static_cast<double>(y.cols());
    }
    int count() const { return static_cast<int>(x_.cols()); }

private:
    Eigen::MatrixXd x_;
};

inline LewisResult lewis_optimal_measure(double p, int m, double tol, RandomSource src,
                                         int frozen_count = 10000, int max_iters = 500) {
    if (m < 1 || m > 8)
        throw std::invalid_argument("lewis_optimal_measure: m must be in 1..8 (desk scale)");
    if (!(tol > 0.0)) throw std::invalid_argument("lewis_optimal_measure: tol must be > 0");
    const FrozenSample sample(m, frozen_count, src.stream("lewis-frozen"));

    auto normalize = [&](Eigen::MatrixXd& J) { J /= sample.mean_norm(J, p); };

    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(m, m);
    normalize(J);
    double logdet = std::log(std::abs(J.determinant()));
    double step = 0.1;

    LewisResult out;
    for (int it = 0; it < max_iters; ++it) {
        ++out.iterations;
        Eigen::MatrixXd cand = J + step * J.inverse().transpose();
        normalize(cand);
        const double cand_logdet = std::log(std::abs(cand.determinant()));
        if (cand_logdet > logdet) {
            const double rel = (cand_logdet - logdet) / std::max(std::abs(logdet), 1.0);
            J = cand;
            logdet = cand_logdet;
            if (rel < tol) {
                out.converged = true;
                break;
            }
        } else {
            step /= 2.0;
            if (step < 1e-14) {
                out.converged = true;
                break;
            }
        }
    }
    out.J = J;
    out.log_det = logdet;
    out.norm_value = sample.mean_norm(J, p);
    return out;
}

inline bool is_orthogonal_projection(const Eigen::MatrixXd& P, double tol = 1e-10) {
    if (P.rows() != P.cols()) return false;
    return (P.transpose() * P - P).cwiseAbs().maxCoeff() <= tol &&
           (P * P - P).cwiseAbs().maxCoeff() <= tol;
}

struct ProjectionRatio {
    double ratio = 0.0;
    NormEstimate projected;
    NormEstimate full;
};

// E||J P X||_p / E||J X||_p, estimated with common random vectors
inline ProjectionRatio projection_norm_ratio(const Eigen::MatrixXd& J, const Eigen::MatrixXd& P,
                                             double p, long reps, RandomStream g) {
    if (!is_orthogonal_projection(P))
        throw std::invalid_argument("projection_norm_ratio: P is not an orthogonal projection");
    const int m = static_cast<int>(J.cols());
    RunningStats proj, full;
    for (long i = 0; i < reps; ++i) {
        const Eigen::VectorXd x = sample_std_gaussian(m, g);
        proj.add(vector_norm(J * (P * x), p));
        full.add(vector_norm(J * x, p));
    }
    ProjectionRatio out;
    out.projected = proj.estimate();
    out.full = full.estimate();
    out.ratio = out.projected.mean / out.full.mean;
    return out;
}

} // namespace mcfa::gauss
