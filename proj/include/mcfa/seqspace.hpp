#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mcfa/gauss.hpp"
#include "mcfa/rng.hpp"
#include "mcfa/stats.hpp"

namespace mcfa::seqspace {

using gauss::inf;

struct SeqProblem {
    int M = 1;        // ambient dimension
    double p = 2.0;   // input norm
    double q = 2.0;   // output norm
};

// Worst-case error of keeping the first n coordinates, (M-n)^{1/q-1/p},
// the optimal deterministic method for q <= p. Conventions: 1/inf = 0,
// and n = M gives 0.
inline double det_truncation_error(int M, int n, double p, double q) {
    if (q > p) throw std::invalid_argument("det_truncation_error: formula needs q <= p");
    if (n < 0 || n > M) throw std::invalid_argument("det_truncation_error: need 0 <= n <= M");
    if (n == M) return 0.0;
    const double iq = (q == inf) ? 0.0 : 1.0 / q;
    const double ip = (p == inf) ? 0.0 : 1.0 / p;
    return std::pow(static_cast<double>(M - n), iq - ip);
}

// Exact worst-case error of ell_2^M -> ell_inf^M with n functionals
inline double smolyak_error(int M, int n) {
    if (n < 0 || n > M) throw std::invalid_argument("smolyak_error: need 0 <= n <= M");
    return std::sqrt(static_cast<double>(M - n) / static_cast<double>(M));
}

struct SketchInfo {
    Eigen::MatrixXd N;  // n x M, entries X_ij / sqrt(n)
};

inline SketchInfo make_sketch(int n, int M, RandomStream& g) {
    if (n < 1) throw std::invalid_argument("make_sketch: n must be >= 1");
    SketchInfo info;
    info.N.resize(n, M);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < M; ++j) info.N(i, j) = s * g.normal();
    return info;
}

// The rank-n unbiased sketch-and-lift estimate N^T N x
inline std::pair<Eigen::VectorXd, SketchInfo> fundamental_mc_apply(const Eigen::VectorXd& x,
                                                                   int n, RandomStream& g) {
    SketchInfo info = make_sketch(n, static_cast<int>(x.size()), g);
    Eigen::VectorXd out = info.N.transpose() * (info.N * x);
    return {std::move(out), std::move(info)};
}

// sqrt(1 + (m+1)/n), the second-moment inflation of ||N^T N x||_2
inline double fundamental_mc_second_moment(int m, int n) {
    return std::sqrt(1.0 + static_cast<double>(m + 1) / static_cast<double>(n));
}

// Known Bernstein numbers of ell_p^M -> ell_q^M. Exact values: 1/sqrt(m)
// for (p,q) = (1,2); 1 on the diagonal p = q; and the full-dimension case
// m = M of (2,inf) where the inscribed-ball radius is 1/sqrt(M). All other
// regimes only have order results with unspecified constants, reported as
// unknown.
inline std::optional<double> bernstein_closed_form(const SeqProblem& prob, int m) {
    if (m < 1 || m > prob.M)
        throw std::invalid_argument("bernstein_closed_form: need 1 <= m <= M");
    if (prob.p == 1.0 && prob.q == 2.0) return 1.0 / std::sqrt(static_cast<double>(m));
    if (prob.p == prob.q) return 1.0;
    if (prob.p == 2.0 && prob.q == inf && m == prob.M)
        return 1.0 / std::sqrt(static_cast<double>(prob.M));
    return std::nullopt;
}

// Coordinate-sampling method for ell_1: keep each coordinate independently
// with probability nbar/m. Expected cardinality nbar, expected ell_1 error
// ((m - nbar)/m) ||x||_1; optimal among homogeneous methods.
struct HomogeneousResult {
    Eigen::VectorXd output;
    int kept = 0;
};

inline HomogeneousResult homogeneous_coordinate_method(const Eigen::VectorXd& x, double nbar,
                                                       RandomStream& g) {
    const int m = static_cast<int>(x.size());
    if (!(nbar >= 0.0 && nbar <= static_cast<double>(m)))
        throw std::invalid_argument("homogeneous_coordinate_method: need 0 <= nbar <= m");
    HomogeneousResult out;
    out.output = Eigen::VectorXd::Zero(m);
    const double prob = nbar / static_cast<double>(m);
    for (int i = 0; i < m; ++i) {
        if (g.bernoulli(prob)) {
            out.output[i] = x[i];
            ++out.kept;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Empirical error curve of the fundamental method on ell_2^M -> ell_q^M.
// The worst case is approximated by a fixed probe set: all canonical basis
// vectors plus a batch of random unit vectors. One sketch realization is
// shared across all probes.

struct ErrorCurvePoint {
    int n = 0;
    double worst_mean_error = 0.0;  // max over probes of the replicate mean
    double std_error = 0.0;         // standard error at the worst probe
    double bound = 0.0;             // 2 E||X||_q / sqrt(n), E||X||_q estimated
};

struct ErrorCurve {
    std::vector<ErrorCurvePoint> points;
    double slope = 0.0;          // log error vs log n
    double norm_estimate = 0.0;  // empirical E||X||_q
};

inline ErrorCurve mc_error_curve(const SeqProblem& prob, const std::vector<int>& n_list,
                                 long reps, RandomSource src, int random_probes = 32,
                                 long norm_reps = 20000) {
    if (prob.p != 2.0)
        throw std::invalid_argument("mc_error_curve: the method requires p = 2");
    const int M = prob.M;

    Eigen::MatrixXd probes(M, M + random_probes);
    probes.leftCols(M) = Eigen::MatrixXd::Identity(M, M);
    {
        RandomStream g = src.stream("error-curve-probes");
        for (int j = 0; j < random_probes; ++j) {
            Eigen::VectorXd v = gauss::sample_std_gaussian(M, g);
            probes.col(M + j) = v / v.norm();
        }
    }

    ErrorCurve curve;
    curve.norm_estimate =
        gauss::expected_norm_estimate({M, prob.q}, norm_reps, src.stream("error-curve-norm")).mean;

    std::vector<double> log_n, log_e;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const int n = n_list[ni];
        RandomStream g = src.stream("error-curve", ni);
        std::vector<RunningStats> acc(static_cast<std::size_t>(probes.cols()));
        for (long rep = 0; rep < reps; ++rep) {
            const SketchInfo sk = make_sketch(n, M, g);
            const Eigen::MatrixXd residual = probes - sk.N.transpose() * (sk.N * probes);
            for (int j = 0; j < residual.cols(); ++j)
                acc[static_cast<std::size_t>(j)].add(
                    gauss::vector_norm(residual.col(j), prob.q));
        }
        ErrorCurvePoint pt;
        pt.n = n;
        for (const auto& a : acc) {
            if (a.mean() > pt.worst_mean_error) {
                pt.worst_mean_error = a.mean();
                pt.std_error = a.std_error();
            }
        }
        pt.bound = 2.0 * curve.norm_estimate / std::sqrt(static_cast<double>(n));
        curve.points.push_back(pt);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_e.push_back(std::log(pt.worst_mean_error));
    }
    if (curve.points.size() >= 2) curve.slope = fit_slope(log_n, log_e);
    return curve;
}

} // namespace mcfa::seqspace
