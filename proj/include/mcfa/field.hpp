#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mcfa/rkhs.hpp"
#include "mcfa/rng.hpp"
#include "mcfa/stats.hpp"

namespace mcfa::field {

// Ordered orthonormal basis of a (truncated) RKHS, with the evaluation
// matrix on a fixed grid cached for the sup-norm experiments.
struct BasisSpec {
    int d = 1;
    std::vector<rkhs::BasisTerm> terms;

    int size() const { return static_cast<int>(terms.size()); }

    double eval_combination(const Eigen::VectorXd& coef, const std::vector<double>& x) const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += coef[i] * terms[static_cast<std::size_t>(i)].eval(x);
        return s;
    }

    // matrix psi_i(x_j) over the grid, rows = basis terms
    Eigen::MatrixXd eval_matrix(const rkhs::Grid& grid) const {
        Eigen::MatrixXd B(size(), static_cast<long>(grid.size()));
        long col = 0;
        grid.for_each([&](const std::vector<double>& p) {
            for (int i = 0; i < size(); ++i) B(i, col) = terms[static_cast<std::size_t>(i)].eval(p);
            ++col;
        });
        return B;
    }
};

inline BasisSpec periodic_basis_spec(const rkhs::LambdaSeq& seq, int d, long m) {
    BasisSpec spec;
    spec.d = d;
    spec.terms = rkhs::periodic_basis(seq, d, m);
    return spec;
}

struct FieldSample {
    const BasisSpec* basis = nullptr;
    Eigen::VectorXd coef;

    double eval(const std::vector<double>& x) const { return basis->eval_combination(coef, x); }
};

inline FieldSample sample_field(const BasisSpec& basis, RandomStream& g) {
    if (basis.size() < 1) throw std::invalid_argument("sample_field: basis must be nonempty");
    FieldSample s;
    s.basis = &basis;
    s.coef.resize(basis.size());
    for (int i = 0; i < basis.size(); ++i) s.coef[i] = g.normal();
    return s;
}

// replicate mean of the grid maximum of |Psi|; a lower estimate of E||Psi||_inf
inline NormEstimate empirical_sup_norm(const BasisSpec& basis, const rkhs::Grid& grid,
                                       long reps, RandomStream g) {
    if (grid.size() == 0) throw std::invalid_argument("empirical_sup_norm: grid must be nonempty");
    const Eigen::MatrixXd B = basis.eval_matrix(grid);
    RunningStats acc;
    Eigen::VectorXd coef(basis.size());
    for (long rep = 0; rep < reps; ++rep) {
        for (int i = 0; i < basis.size(); ++i) coef[i] = g.normal();
        acc.add((coef.transpose() * B).cwiseAbs().maxCoeff());
    }
    return acc.estimate();
}

// One realization of the rank-n method applied to the coefficient vector a:
// information y_i = <x_i, a> for Gaussian rows x_i, output (1/n) sum y_i x_i.
// Unbiased, with E||f - A(f)||_inf <= 2 E||Psi||_inf / sqrt(n) over the ball.
inline Eigen::VectorXd plain_mc_approximate(const Eigen::VectorXd& a, int n, RandomStream& g) {
    if (n < 1) throw std::invalid_argument("plain_mc_approximate: n must be >= 1");
    const int m = static_cast<int>(a.size());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd row(m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) row[j] = g.normal();
        b += row.dot(a) * row;
    }
    return b / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Frequency truncation for low smoothness 1/2 < r <= 1.
//
// The published cutoff is m = ceil((4 log2 (beta1/(r-1/2)) d / eps)^{1/(2r-1)}).
// Evaluating the direct bound ||f - f_m||_inf <= sqrt(1 - (sum_{k<=m} lambda_k^2)^d)
// shows this cutoff certifies eps/2 only for eps around 1 and above, so the
// certified variant keeps doubling m until the direct bound is below eps/2.

struct TruncationChoice {
    long m_formula = 0;
    long m_certified = 0;
    double bound_formula = 0.0;    // direct bound at m_formula
    double bound_certified = 0.0;  // direct bound at m_certified, <= eps/2
};

inline double truncation_error_bound(double r, double beta0_sq, int d, long m) {
    const double beta1 = rkhs::korobov_beta1(r, beta0_sq);
    double partial = beta0_sq;
    for (long k = 1; k <= m; ++k) partial += beta1 * std::pow(static_cast<double>(k), -2.0 * r);
    return std::sqrt(std::max(0.0, 1.0 - std::pow(partial, d)));
}

inline std::optional<TruncationChoice> korobov_truncation(double r, double beta0_sq, int d,
                                                          double eps) {
    if (!(r > 0.5)) throw std::invalid_argument("korobov_truncation: requires r > 1/2");
    if (!(eps > 0.0)) throw std::invalid_argument("korobov_truncation: requires eps > 0");
    if (r > 1.0) return std::nullopt;  // full-series method applies directly
    const double beta1 = rkhs::korobov_beta1(r, beta0_sq);
    TruncationChoice out;
    out.m_formula = static_cast<long>(std::ceil(
        std::pow(4.0 * std::log(2.0) * (beta1 / (r - 0.5)) * d / eps, 1.0 / (2.0 * r - 1.0))));
    out.bound_formula = truncation_error_bound(r, beta0_sq, d, out.m_formula);
    out.m_certified = out.m_formula;
    out.bound_certified = out.bound_formula;
    while (out.bound_certified > eps / 2.0) {
        out.m_certified *= 2;
        out.bound_certified = truncation_error_bound(r, beta0_sq, d, out.m_certified);
        if (out.m_certified > (1L << 40))
            throw std::runtime_error("korobov_truncation: certification did not converge");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tractability experiment: empirical sup-grid error of the plain method on a
// probe family (basis vectors plus random unit coefficient vectors), per n,
// against the bound 2 E||Psi||_inf / sqrt(n).

struct KorobovCurvePoint {
    int n = 0;
    double worst_mean_error = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
};

struct KorobovCurve {
    std::vector<KorobovCurvePoint> points;
    double slope = 0.0;
    double sup_norm_mean = 0.0;  // empirical E||Psi||_inf
    double sup_norm_se = 0.0;
    double empirical_rate_constant = 0.0;  // worst error * sqrt(n), largest n
};

inline KorobovCurve korobov_experiment(double r, double beta0_sq, int d,
                                       const std::vector<int>& n_list, long reps,
                                       RandomSource src, long basis_m = 64,
                                       int grid_per_axis = 0, int random_probes = 16,
                                       long sup_reps = 2000) {
    if (!(r > 0.5)) throw std::invalid_argument("korobov_experiment: requires r > 1/2");
    if (d > 4) throw std::invalid_argument("korobov_experiment: d <= 4 at desk scale");
    if (grid_per_axis == 0) grid_per_axis = (d <= 2) ? 64 : 16;

    rkhs::LambdaSeq seq = rkhs::korobov_lambda(r, beta0_sq, 4096);
    // the low-smoothness path works on the certified truncated space
    if (r <= 1.0) {
        const auto tc = korobov_truncation(r, beta0_sq, d, 0.5);
        seq = rkhs::korobov_lambda(r, beta0_sq, static_cast<int>(tc->m_certified));
    }
    const BasisSpec basis = periodic_basis_spec(seq, d, basis_m);
    const rkhs::Grid grid = rkhs::torus_grid(d, grid_per_axis);
    const Eigen::MatrixXd B = basis.eval_matrix(grid);
    const int m = basis.size();

    KorobovCurve curve;
    {
        RunningStats acc;
        RandomStream g = src.stream("korobov-sup");
        Eigen::VectorXd coef(m);
        for (long rep = 0; rep < sup_reps; ++rep) {
            for (int i = 0; i < m; ++i) coef[i] = g.normal();
            acc.add((coef.transpose() * B).cwiseAbs().maxCoeff());
        }
        curve.sup_norm_mean = acc.mean();
        curve.sup_norm_se = acc.std_error();
    }

    Eigen::MatrixXd probes(m, m + random_probes);
    probes.leftCols(m) = Eigen::MatrixXd::Identity(m, m);
    {
        RandomStream g = src.stream("korobov-probes");
        for (int j = 0; j < random_probes; ++j) {
            Eigen::VectorXd v(m);
            for (int i = 0; i < m; ++i) v[i] = g.normal();
            probes.col(m + j) = v / v.norm();
        }
    }

    std::vector<double> log_n, log_e;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const int n = n_list[ni];
        RandomStream g = src.stream("korobov-run", ni);
        std::vector<RunningStats> acc(static_cast<std::size_t>(probes.cols()));
        Eigen::MatrixXd rows(n, m);
        for (long rep = 0; rep < reps; ++rep) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) rows(i, j) = g.normal();
            const Eigen::MatrixXd approx = rows.transpose() * (rows * probes) / n;
            const Eigen::MatrixXd sup_err = ((probes - approx).transpose() * B).cwiseAbs();
            for (int j = 0; j < probes.cols(); ++j)
                acc[static_cast<std::size_t>(j)].add(sup_err.row(j).maxCoeff());
        }
        KorobovCurvePoint pt;
        pt.n = n;
        for (const auto& a : acc) {
            if (a.mean() > pt.worst_mean_error) {
                pt.worst_mean_error = a.mean();
                pt.std_error = a.std_error();
            }
        }
        pt.bound = 2.0 * curve.sup_norm_mean / std::sqrt(static_cast<double>(n));
        curve.points.push_back(pt);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_e.push_back(std::log(pt.worst_mean_error));
    }
    if (curve.points.size() >= 2) curve.slope = fit_slope(log_n, log_e);
    if (!curve.points.empty())
        curve.empirical_rate_constant = curve.points.back().worst_mean_error *
                                        std::sqrt(static_cast<double>(curve.points.back().n));
    return curve;
}

} // namespace mcfa::field
