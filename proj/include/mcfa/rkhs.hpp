#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcfa/stats.hpp"

namespace mcfa::rkhs {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Riemann zeta for s > 1: direct summation with an Euler-Maclaurin tail,
// absolute error below 1e-12 for s >= 1.02.
inline double zeta_fn(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta_fn: requires s > 1");
    const long N = 20000;
    double sum = 0.0;
    for (long k = N; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double Nd = static_cast<double>(N);
    // integral tail plus the first correction terms
    sum += std::pow(Nd, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(Nd, -s);
    sum -= s / 12.0 * std::pow(Nd, -s - 1.0);
    return sum;
}

// ---------------------------------------------------------------------------
// Fourier weight sequences

struct LambdaSeq {
    std::vector<double> lambda;       // lambda_0 .. lambda_L
    double tail_sq_bound = 0.0;       // bound on sum_{k>L} lambda_k^2
    double tail_weighted_bound = 0.0; // bound on sum_{k>L} k lambda_k^2 (inf if divergent)

    int truncation() const { return static_cast<int>(lambda.size()) - 1; }
    double lambda_sq(int k) const {
        return k <= truncation() ? lambda[static_cast<std::size_t>(k)] * lambda[static_cast<std::size_t>(k)] : 0.0;
    }
    double sum_sq() const {
        double s = 0.0;
        for (double v : lambda) s += v * v;
        return s;
    }
    double weighted_sum() const {  // sigma_lambda = sum k lambda_k^2, with tail bound
        double s = 0.0;
        for (int k = 1; k <= truncation(); ++k) s += k * lambda_sq(k);
        if (std::isinf(tail_weighted_bound))
            throw std::domain_error(
                "LambdaSeq: sum k lambda_k^2 diverges, use a truncated subspace");
        return s + tail_weighted_bound;
    }
    bool normalized(double eps = 1e-9) const {
        return std::abs(sum_sq() + tail_sq_bound - 1.0) <= eps;
    }
    void check_mass() const {
        if (sum_sq() > 1.0 + 1e-12)
            throw std::invalid_argument("LambdaSeq: sum lambda_k^2 exceeds 1");
    }
};

// Korobov weights: lambda_0 = sqrt(beta0), lambda_k = sqrt(beta1) k^{-r}
// with beta1 = (1 - beta0)/zeta(2r) so that the total mass is 1.
inline LambdaSeq korobov_lambda(double r, double beta0_sq, int L) {
    if (!(r > 0.5))
        throw std::invalid_argument(
            "korobov_lambda: r > 1/2 is necessary and sufficient for a reproducing kernel");
    if (!(beta0_sq > 0.0 && beta0_sq <= 1.0))
        throw std::invalid_argument("korobov_lambda: beta0 must be in (0,1]");
    if (L < 0) throw std::invalid_argument("korobov_lambda: L must be >= 0");
    LambdaSeq seq;
    seq.lambda.resize(static_cast<std::size_t>(L) + 1);
    seq.lambda[0] = std::sqrt(beta0_sq);
    const double beta1 = (1.0 - beta0_sq) / zeta_fn(2.0 * r);
    for (int k = 1; k <= L; ++k)
        seq.lambda[static_cast<std::size_t>(k)] =
            std::sqrt(beta1) * std::pow(static_cast<double>(k), -r);
    const double Ld = static_cast<double>(L);
    seq.tail_sq_bound = (L >= 1) ? beta1 * std::pow(Ld, 1.0 - 2.0 * r) / (2.0 * r - 1.0)
                                 : beta1 * zeta_fn(2.0 * r);
    if (r > 1.0) {
        seq.tail_weighted_bound =
            (L >= 1) ? beta1 * std::pow(Ld, 2.0 - 2.0 * r) / (2.0 * r - 2.0)
                     : beta1 * zeta_fn(2.0 * r - 1.0);
    } else {
        seq.tail_weighted_bound = std::numeric_limits<double>::infinity();
    }
    seq.check_mass();
    return seq;
}

inline double korobov_beta1(double r, double beta0_sq) {
    return (1.0 - beta0_sq) / zeta_fn(2.0 * r);
}

// ---------------------------------------------------------------------------
// Kernels

enum class KernelKind { PeriodicLambda, WienerSheet };

struct KernelHandle {
    KernelKind kind = KernelKind::PeriodicLambda;
    int d = 1;
    LambdaSeq lambda;  // unused for the Wiener sheet

    static KernelHandle periodic(LambdaSeq seq, int d) {
        if (d < 1) throw std::invalid_argument("KernelHandle: d must be >= 1");
        return {KernelKind::PeriodicLambda, d, std::move(seq)};
    }
    static KernelHandle wiener_sheet(int d) {
        if (d < 1) throw std::invalid_argument("KernelHandle: d must be >= 1");
        return {KernelKind::WienerSheet, d, {}};
    }
};

inline double torus_dist(double x, double z) {
    const double t = std::abs(x - z);
    return std::min(t, 1.0 - t);
}

inline double torus_dist_d(const std::vector<double>& x, const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += torus_dist(x[j], z[j]);
    return s;
}

// one-dimensional periodic kernel value sum lambda_k^2 cos(2 pi k delta)
inline double periodic_kernel_1d(const LambdaSeq& seq, double delta) {
    double s = 0.0;
    for (int k = seq.truncation(); k >= 1; --k)
        s += seq.lambda_sq(k) * std::cos(2.0 * pi * k * delta);
    return s + seq.lambda_sq(0);
}

inline double wiener_kernel_1d(double x, double z) {
    if (x == 0.0 || z == 0.0) return 0.0;
    if ((x > 0.0) != (z > 0.0)) return 0.0;
    return std::min(std::abs(x), std::abs(z));
}

inline double kernel_eval(const KernelHandle& K, const std::vector<double>& x,
                          const std::vector<double>& z) {
    if (static_cast<int>(x.size()) != K.d || static_cast<int>(z.size()) != K.d)
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    double prod = 1.0;
    for (int j = 0; j < K.d; ++j) {
        const std::size_t ju = static_cast<std::size_t>(j);
        prod *= (K.kind == KernelKind::PeriodicLambda)
                    ? periodic_kernel_1d(K.lambda, x[ju] - z[ju])
                    : wiener_kernel_1d(x[ju], z[ju]);
    }
    return prod;
}

inline double canonical_metric(const KernelHandle& K, const std::vector<double>& x,
                               const std::vector<double>& z) {
    const double v = kernel_eval(K, x, x) - 2.0 * kernel_eval(K, x, z) + kernel_eval(K, z, z);
    return std::sqrt(std::max(v, 0.0));
}

// ---------------------------------------------------------------------------
// Singular spectrum of the embedding into L_2 for periodic tensor kernels.
// One-dimensional values are sigma_0 = lambda_0 with sign multiplicity 1 and
// sigma_k = lambda_k/sqrt(2) with multiplicity 2 (sine and cosine); the
// d-dimensional values are the tensor products, enumerated largest-first.

struct SpectrumEntry {
    double sigma_sq = 0.0;
    long multiplicity = 1;       // product of per-axis sign multiplicities
    std::vector<int> freqs;      // per-axis absolute frequencies
};

struct SingularSpectrum {
    std::vector<SpectrumEntry> entries;  // grouped by frequency pattern, descending
    long count = 0;                      // total values including multiplicity
    double enumerated_mass = 0.0;        // sum sigma^2 over all enumerated values
    double omitted_mass_bound = 0.0;     // certified bound on what the cutoff drops

    // flat list of the k largest sigma^2 (multiplicity expanded)
    std::vector<double> largest(long k) const {
        std::vector<double> out;
        for (const auto& e : entries) {
            for (long i = 0; i < e.multiplicity && static_cast<long>(out.size()) < k; ++i)
                out.push_back(e.sigma_sq);
            if (static_cast<long>(out.size()) >= k) break;
        }
        return out;
    }
};

namespace detail {

struct AxisLevel {
    double sigma_sq;
    int freq;
    int multiplicity;
};

// per-axis levels sorted by decreasing sigma_sq
inline std::vector<AxisLevel> axis_levels(const LambdaSeq& seq, int cutoff) {
    std::vector<AxisLevel> levels;
    levels.push_back({seq.lambda_sq(0), 0, 1});
    for (int k = 1; k <= cutoff; ++k) levels.push_back({seq.lambda_sq(k) / 2.0, k, 2});
    std::stable_sort(levels.begin(), levels.end(),
                     [](const AxisLevel& a, const AxisLevel& b) { return a.sigma_sq > b.sigma_sq; });
    return levels;
}

inline std::uint64_t pack_indices(const std::vector<int>& idx) {
    std::uint64_t key = 0;
    for (int v : idx) key = key * 1000003ULL + static_cast<std::uint64_t>(v) + 1ULL;
    return key;
}

} // namespace detail

// frequency cutoff such that the mass omitted by |k|_inf <= cutoff is < eps
inline int spectrum_cutoff(const LambdaSeq& seq, int d, double eps = 1e-9) {
    const double total = seq.sum_sq() + seq.tail_sq_bound;
    double mass = seq.lambda_sq(0);
    for (int c = 1; c <= seq.truncation(); ++c) {
        mass += seq.lambda_sq(c);
        const double omitted = 1.0 - std::pow(mass / total, d);
        if (omitted < eps) return c;
    }
    // fall back to everything we have; caller sees the associated tail bound
    return seq.truncation();
}

inline SingularSpectrum periodic_singular_spectrum(const LambdaSeq& seq, int d, long count,
                                                   double mass_eps = 1e-9) {
    if (!seq.normalized(1e-6))
        throw std::invalid_argument("periodic_singular_spectrum: sequence must be normalized");
    const int cutoff = spectrum_cutoff(seq, d, mass_eps);
    const auto levels = detail::axis_levels(seq, cutoff);
    const long axis_total = 1 + 2L * cutoff;
    double per_axis_total = std::pow(static_cast<double>(axis_total), d);
    if (per_axis_total < static_cast<double>(count))
        throw std::invalid_argument(
            "periodic_singular_spectrum: cutoff " + std::to_string(cutoff) +
            " holds only " + std::to_string(static_cast<long>(per_axis_total)) +
            " values, fewer than requested");

    double axis_mass = 0.0;
    for (const auto& lv : levels) axis_mass += lv.sigma_sq * lv.multiplicity;
    const double total_mass = seq.sum_sq() + seq.tail_sq_bound;

    SingularSpectrum out;
    out.omitted_mass_bound =
        std::max(0.0, std::pow(total_mass, d) - std::pow(axis_mass, d));

    using Node = std::pair<double, std::vector<int>>;
    auto cmp = [](const Node& a, const Node& b) { return a.first < b.first; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    std::map<std::uint64_t, bool> seen;

    std::vector<int> root(static_cast<std::size_t>(d), 0);
    double root_val = 1.0;
    for (int j = 0; j < d; ++j) root_val *= levels[0].sigma_sq;
    heap.push({root_val, root});
    seen[detail::pack_indices(root)] = true;

    while (!heap.empty() && out.count < count) {
        auto [val, idx] = heap.top();
        heap.pop();
        SpectrumEntry entry;
        entry.sigma_sq = val;
        entry.multiplicity = 1;
        entry.freqs.resize(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const auto& lv = levels[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            entry.freqs[static_cast<std::size_t>(j)] = lv.freq;
            entry.multiplicity *= lv.multiplicity;
        }
        out.count += entry.multiplicity;
        out.enumerated_mass += entry.sigma_sq * entry.multiplicity;
        out.entries.push_back(std::move(entry));

        for (int j = 0; j < d; ++j) {
            const std::size_t ju = static_cast<std::size_t>(j);
            if (idx[ju] + 1 < static_cast<int>(levels.size())) {
                std::vector<int> nxt = idx;
                ++nxt[ju];
                const std::uint64_t key = detail::pack_indices(nxt);
                if (!seen[key]) {
                    seen[key] = true;
                    double v = 1.0;
                    for (int jj = 0; jj < d; ++jj)
                        v *= levels[static_cast<std::size_t>(nxt[static_cast<std::size_t>(jj)])].sigma_sq;
                    heap.push({v, std::move(nxt)});
                }
            }
        }
    }
    if (out.count < count)
        throw std::invalid_argument("periodic_singular_spectrum: enumeration exhausted early");
    return out;
}

// sqrt(1 - sum of the n largest sigma^2): a lower bound for the worst-case
// error of any n-functional deterministic method into L_inf.
inline double worst_case_lower_bound_tail(const LambdaSeq& seq, int d, long n) {
    if (n < 0) throw std::invalid_argument("worst_case_lower_bound_tail: n must be >= 0");
    if (n == 0) return 1.0;
    const auto spec = periodic_singular_spectrum(seq, d, n);
    double head = 0.0;
    for (double v : spec.largest(n)) head += v;
    return std::sqrt(std::max(0.0, 1.0 - head));
}

// relaxation sigma_k^2 <= beta^d with beta = max{lambda_0^2, sup_k lambda_k^2/2}
inline double spectral_sup_beta(const LambdaSeq& seq) {
    double beta = seq.lambda_sq(0);
    for (int k = 1; k <= seq.truncation(); ++k) beta = std::max(beta, seq.lambda_sq(k) / 2.0);
    return beta;
}

inline double curse_lower_bound(const LambdaSeq& seq, int d, double n) {
    if (seq.lambda_sq(0) >= 1.0 - 1e-15)
        throw std::invalid_argument("curse_lower_bound: lambda_0 = 1 is the degenerate constant space");
    const double beta = spectral_sup_beta(seq);
    return std::sqrt(std::max(0.0, 1.0 - n * std::pow(beta, d)));
}

// complexity version: n^det >= beta^{-d} (1-eps)^2
inline double curse_complexity_bound(const LambdaSeq& seq, int d, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("curse_complexity_bound: eps must be in (0,1)");
    const double beta = spectral_sup_beta(seq);
    return std::pow(beta, -d) * (1.0 - eps) * (1.0 - eps);
}

// sharp diagonal-operator bound sup_{m>n} sqrt((m-n)/sum_{j<=m} lambda_j^{-2})
inline double diag_operator_lower_bound(const std::vector<double>& lambdas, int n) {
    double best = 0.0;
    double inv_sum = 0.0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (lambdas[j] <= 0.0) break;
        inv_sum += 1.0 / (lambdas[j] * lambdas[j]);
        const long m = static_cast<long>(j) + 1;
        if (m > n) best = std::max(best, std::sqrt(static_cast<double>(m - n) / inv_sum));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Fourier basis terms of the periodic space, ordered by decreasing singular
// value. weight = prod_j lambda_{k_j}; the L_2 norm of a term is sigma.

struct BasisTerm {
    std::vector<int> freq;         // absolute frequency per axis
    std::vector<std::uint8_t> use_sin;  // tag per axis, meaningful for freq > 0
    double weight = 1.0;
    double sigma_sq = 1.0;

    double eval(const std::vector<double>& x) const {
        double v = weight;
        for (std::size_t j = 0; j < freq.size(); ++j) {
            if (freq[j] == 0) continue;
            const double a = 2.0 * pi * freq[j] * x[j];
            v *= use_sin[j] ? std::sin(a) : std::cos(a);
        }
        return v;
    }
};

inline std::vector<BasisTerm> periodic_basis(const LambdaSeq& seq, int d, long m) {
    const auto spec = periodic_singular_spectrum(seq, d, m);
    std::vector<BasisTerm> terms;
    for (const auto& e : spec.entries) {
        // expand sign patterns: cosine before sine, lexicographic over axes
        std::vector<int> active;
        for (int j = 0; j < d; ++j)
            if (e.freqs[static_cast<std::size_t>(j)] > 0) active.push_back(j);
        const long patterns = 1L << active.size();
        for (long mask = 0; mask < patterns && static_cast<long>(terms.size()) < m; ++mask) {
            BasisTerm t;
            t.freq = e.freqs;
            t.use_sin.assign(static_cast<std::size_t>(d), 0);
            for (std::size_t ai = 0; ai < active.size(); ++ai)
                t.use_sin[static_cast<std::size_t>(active[ai])] =
                    static_cast<std::uint8_t>((mask >> ai) & 1);
            t.weight = 1.0;
            for (int j = 0; j < d; ++j)
                t.weight *= seq.lambda[static_cast<std::size_t>(e.freqs[static_cast<std::size_t>(j)])];
            t.sigma_sq = e.sigma_sq;
            terms.push_back(std::move(t));
        }
        if (static_cast<long>(terms.size()) >= m) break;
    }
    return terms;
}

// ---------------------------------------------------------------------------
// Grids

struct Grid {
    int d = 1;
    std::vector<double> axis;

    std::size_t size() const {
        std::size_t s = 1;
        for (int j = 0; j < d; ++j) s *= axis.size();
        return s;
    }
    template <typename F>
    void for_each(F&& f) const {
        std::vector<double> pt(static_cast<std::size_t>(d), axis[0]);
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            f(pt);
            int j = 0;
            for (; j < d; ++j) {
                const std::size_t ju = static_cast<std::size_t>(j);
                if (++idx[ju] < axis.size()) {
                    pt[ju] = axis[idx[ju]];
                    break;
                }
                idx[ju] = 0;
                pt[ju] = axis[0];
            }
            if (j == d) break;
        }
    }
};

inline Grid torus_grid(int d, int per_axis) {
    Grid g;
    g.d = d;
    for (int i = 0; i < per_axis; ++i)
        g.axis.push_back(static_cast<double>(i) / static_cast<double>(per_axis));
    return g;
}

inline Grid cube_grid(int d, int per_axis, double lo = -1.0, double hi = 1.0) {
    Grid g;
    g.d = d;
    if (per_axis == 1) {
        g.axis.push_back(0.5 * (lo + hi));
        return g;
    }
    for (int i = 0; i < per_axis; ++i)
        g.axis.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(per_axis - 1));
    return g;
}

// ---------------------------------------------------------------------------
// Covering numbers of a discretized domain under the canonical metric.
// Greedy covers certify an upper bound on N(r) for the candidate point set.

class DiscretizedDomain {
public:
    DiscretizedDomain(const KernelHandle& K, int per_axis)
        : kernel_(K), per_axis_(per_axis) {
        const Grid g = (K.kind == KernelKind::PeriodicLambda) ? torus_grid(K.d, per_axis)
                                                              : cube_grid(K.d, per_axis);
        g.for_each([&](const std::vector<double>& p) { points_.push_back(p); });
        if (K.kind == KernelKind::PeriodicLambda) {
            // translation invariance: cache the 1-dim kernel at grid offsets
            diff_table_.resize(static_cast<std::size_t>(per_axis));
            for (int i = 0; i < per_axis; ++i)
                diff_table_[static_cast<std::size_t>(i)] = periodic_kernel_1d(
                    K.lambda, static_cast<double>(i) / static_cast<double>(per_axis));
        }
    }

    std::size_t size() const { return points_.size(); }
    const std::vector<std::vector<double>>& points() const { return points_; }

    double dist(std::size_t a, std::size_t b) const {
        if (kernel_.kind == KernelKind::PeriodicLambda) {
            double kxx = 1.0, kxz = 1.0;
            for (int j = 0; j < kernel_.d; ++j) {
                const std::size_t ju = static_cast<std::size_t>(j);
                const long ia = std::lround(points_[a][ju] * per_axis_);
                const long ib = std::lround(points_[b][ju] * per_axis_);
                long delta = (ia - ib) % per_axis_;
                if (delta < 0) delta += per_axis_;
                kxx *= diff_table_[0];
                kxz *= diff_table_[static_cast<std::size_t>(delta)];
            }
            return std::sqrt(std::max(0.0, 2.0 * (kxx - kxz)));
        }
        return canonical_metric(kernel_, points_[a], points_[b]);
    }

    double diameter() const {
        double best = 0.0;
        for (std::size_t a = 0; a < points_.size(); ++a)
            for (std::size_t b = a + 1; b < points_.size(); ++b)
                best = std::max(best, dist(a, b));
        return best;
    }

    double min_positive_dist() const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < points_.size(); ++a)
            for (std::size_t b = a + 1; b < points_.size(); ++b) {
                const double v = dist(a, b);
                if (v > 0.0) best = std::min(best, v);
            }
        return best;
    }

    long covering_number(double r) const {
        if (!(r > 0.0)) throw std::invalid_argument("covering_number: r must be > 0");
        std::vector<std::size_t> uncovered(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) uncovered[i] = i;
        long centers = 0;
        while (!uncovered.empty()) {
            const std::size_t c = uncovered.front();
            ++centers;
            std::vector<std::size_t> rest;
            rest.reserve(uncovered.size());
            for (std::size_t i = 1; i < uncovered.size(); ++i)
                if (dist(c, uncovered[i]) > r) rest.push_back(uncovered[i]);
            uncovered.swap(rest);
        }
        return centers;
    }

private:
    KernelHandle kernel_;
    int per_axis_;
    std::vector<std::vector<double>> points_;
    std::vector<double> diff_table_;
};

inline constexpr double dudley_constant = 5.656854249492380195206754896838;  // 4 sqrt(2)

// 4 sqrt(2) int_0^diam sqrt(log N(r)) dr. Below the smallest positive
// distance the covering number is constant, so that piece is exact; above,
// a trapezoid rule on a log-spaced radius grid.
inline double dudley_bound(const KernelHandle& K, int per_axis, int radius_nodes = 256) {
    const DiscretizedDomain dom(K, per_axis);
    const double diam = dom.diameter();
    if (diam <= 0.0) return 0.0;
    const double n_total = static_cast<double>(dom.size());

    double lo = dom.min_positive_dist();
    if (!(lo < diam)) lo = diam / 2.0;
    double integral = lo * std::sqrt(std::log(n_total));

    std::vector<double> rs, fs;
    for (int i = 0; i < radius_nodes; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(radius_nodes - 1);
        rs.push_back(lo * std::pow(diam / lo, t));
    }
    long last = -1;
    for (double r : rs) {
        long nr = (last == 1) ? 1 : dom.covering_number(r);
        last = nr;
        fs.push_back(std::sqrt(std::log(static_cast<double>(nr))));
    }
    for (std::size_t i = 1; i < rs.size(); ++i)
        integral += 0.5 * (fs[i - 1] + fs[i]) * (rs[i] - rs[i - 1]);
    return dudley_constant * integral;
}

// ---------------------------------------------------------------------------
// Majorizing-measure bound for periodic product kernels. Requires the local
// kernel estimate K_1(x,z) >= exp(-alpha d_T(x,z)) for d_T <= R0.

inline constexpr double fernique_constant = 21.656854249492380195;  // 8 (2 + 1/sqrt(2))

struct LocalKernelEstimate {
    double alpha = 0.0;
    double R0 = 0.5;
};

// Sufficient condition: sigma_lambda = sum k lambda_k^2 < infinity.
// For lambda_0^2 >= 2/3 the direct estimate alpha = 2 pi sigma/(2 lambda_0^2 - 1)
// holds globally (R0 = 1/2); otherwise compare against the rescaled sequence
// with kappa_0^2 = 2/3, pick up a factor 4 in the exponent and shrink R0.
inline LocalKernelEstimate sufficient_alpha(const LambdaSeq& seq) {
    const double lam0_sq = seq.lambda_sq(0);
    if (std::abs(seq.sum_sq() + seq.tail_sq_bound - 1.0) > 1e-6)
        throw std::invalid_argument("sufficient_alpha: sequence must be normalized");
    if (lam0_sq >= 1.0 - 1e-15) return {0.0, 0.5};  // constant kernel, K = 1 >= e^0
    const double sigma = seq.weighted_sum();
    if (lam0_sq >= 2.0 / 3.0)
        return {2.0 * pi * sigma / (2.0 * lam0_sq - 1.0), 0.5};
    const double c = 3.0 * (1.0 - lam0_sq);
    const double sigma_kappa = sigma / c;
    const double alpha_kappa = 6.0 * pi * sigma_kappa;
    return {4.0 * alpha_kappa, std::min(std::log(9.0 / 8.0) / alpha_kappa, 0.5)};
}

// verification probe: min over the grid of K(x,0) - exp(-alpha d_T(x,0)^p)
// restricted to d_T(x,0) <= R0
inline double local_estimate_margin(const LambdaSeq& seq, double alpha, double R0,
                                    double exponent = 1.0, int grid_n = 4096) {
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
        const double x = 0.5 * static_cast<double>(i) / static_cast<double>(grid_n);
        if (x > R0) break;
        const double k = periodic_kernel_1d(seq, x);
        margin = std::min(margin, k - std::exp(-alpha * std::pow(x, exponent)));
    }
    return margin;
}

// C_Fernique sup_x int_0^inf sqrt(log(1/mu(B_K(x,r)))) dr for the uniform
// measure on the torus, via the three-radius-range decomposition:
// ell_1-ball volumes up to r = 2 alpha R0^2, the R0-ball volume up to the
// diameter bound 2, nothing beyond.
inline double fernique_bound(int d, const LocalKernelEstimate& est, int radius_nodes = 256) {
    if (est.alpha == 0.0) return 0.0;  // constant field
    const double a = est.alpha;
    const double dd = static_cast<double>(d);
    const double lgamma_d = std::lgamma(dd + 1.0);

    auto log_inv_ball = [&](double r) {
        // mu(B_K(x,r)) >= Vol(sqrt(r/(2a)) B_1^d) = (2 sqrt(r/(2a)))^d / d!
        const double R = std::sqrt(r / (2.0 * a));
        return std::max(0.0, lgamma_d - dd * std::log(2.0 * R));
    };

    const double rmax = std::min(2.0 * a * est.R0 * est.R0, 2.0);
    const double rlo = rmax * 1e-12;
    std::vector<double> rs, fs;
    for (int i = 0; i < radius_nodes; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(radius_nodes - 1);
        rs.push_back(rlo * std::pow(rmax / rlo, t));
        fs.push_back(std::sqrt(log_inv_ball(rs.back())));
    }
    // stub below rlo: integrand <= f(rlo) + sqrt((d/2) log(rlo/r)), and the
    // second part integrates to rlo sqrt(d/2) sqrt(pi)/2
    double integral = rlo * (fs.front() + std::sqrt(dd / 2.0) * std::sqrt(pi) / 2.0);
    for (std::size_t i = 1; i < rs.size(); ++i)
        integral += 0.5 * (fs[i - 1] + fs[i]) * (rs[i] - rs[i - 1]);
    const double mid_width = std::max(0.0, 2.0 - rmax);
    integral += mid_width * std::sqrt(std::max(0.0, lgamma_d - dd * std::log(2.0 * est.R0)));
    return fernique_constant * integral;
}

// E||Psi||_inf <= sqrt(2/pi) inf_x sqrt(K(x,x)) + 2 E sup Psi
inline double expected_sup_bound_combine(const KernelHandle& K, double e_sup, const Grid& grid) {
    if (!(e_sup >= 0.0))
        throw std::invalid_argument("expected_sup_bound_combine: e_sup must be >= 0");
    double inf_diag = std::numeric_limits<double>::infinity();
    grid.for_each([&](const std::vector<double>& p) {
        inf_diag = std::min(inf_diag, kernel_eval(K, p, p));
    });
    return std::sqrt(2.0 / pi) * std::sqrt(std::max(0.0, inf_diag)) + 2.0 * e_sup;
}

// Worst-case remainder of the n-term basis algorithm:
// max over the grid of sqrt(K(x,x) - sum_i psi_i(x)^2).
inline double worst_case_upper_bound_remainder(const KernelHandle& K,
                                               const std::vector<BasisTerm>& basis,
                                               const Grid& grid) {
    double worst = 0.0;
    bool bad = false;
    grid.for_each([&](const std::vector<double>& p) {
        double rem = kernel_eval(K, p, p);
        for (const auto& t : basis) {
            const double v = t.eval(p);
            rem -= v * v;
        }
        if (rem < -1e-9) bad = true;
        worst = std::max(worst, std::max(rem, 0.0));
    });
    if (bad)
        throw std::invalid_argument(
            "worst_case_upper_bound_remainder: basis inconsistent with kernel");
    return std::sqrt(worst);
}

} // namespace mcfa::rkhs
