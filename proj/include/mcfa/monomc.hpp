#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcfa/rng.hpp"
#include "mcfa/stats.hpp"

namespace mcfa::monomc {

using MonotoneOracle = std::function<double(const std::vector<double>&)>;

// ---------------------------------------------------------------------------
// Deterministic grid algorithm: split [0,1]^d into (m+1)^d subcubes and set
// each to the midpoint of its corner values. Boundary convention: corners on
// the lower boundary take the declared minimum, corners touching the upper
// faces the declared maximum, so exactly m^d interior values are sampled.
// Worst-case L1 error (hi-lo) d / (2(m+1)).

struct GridApproximant {
    int d = 1;
    int m = 1;                   // (m+1)^d subcubes
    std::vector<double> values;  // flat over {0..m}^d, first axis fastest
    long samples_used = 0;

    double eval(const std::vector<double>& x) const {
        long idx = 0, stride = 1;
        for (int j = 0; j < d; ++j) {
            long c = static_cast<long>(std::floor(x[static_cast<std::size_t>(j)] * (m + 1)));
            c = std::clamp(c, 0L, static_cast<long>(m));
            idx += c * stride;
            stride *= m + 1;
        }
        return values[static_cast<std::size_t>(idx)];
    }
};

inline GridApproximant det_grid_approximate(const MonotoneOracle& f, int m, int d,
                                            double lo = -1.0, double hi = 1.0) {
    if (m < 1) throw std::invalid_argument("det_grid_approximate: m must be >= 1");
    if (d < 1) throw std::invalid_argument("det_grid_approximate: d must be >= 1");
    GridApproximant out;
    out.d = d;
    out.m = m;
    long interior = 1;
    for (int j = 0; j < d; ++j) interior *= m;
    std::vector<double> cache(static_cast<std::size_t>(interior),
                              std::numeric_limits<double>::quiet_NaN());

    // corner value with boundary convention; i in {0..m+1}^d grid coords
    auto corner = [&](const std::vector<int>& i) {
        bool at_top = false, at_bottom = false;
        for (int j = 0; j < d; ++j) {
            if (i[static_cast<std::size_t>(j)] == m + 1) at_top = true;
            if (i[static_cast<std::size_t>(j)] == 0) at_bottom = true;
        }
        if (at_top) return hi;
        if (at_bottom) return lo;
        long idx = 0, stride = 1;
        for (int j = 0; j < d; ++j) {
            idx += (i[static_cast<std::size_t>(j)] - 1) * stride;
            stride *= m;
        }
        double& slot = cache[static_cast<std::size_t>(idx)];
        if (std::isnan(slot)) {
            std::vector<double> pt(static_cast<std::size_t>(d));
            for (int j = 0; j < d; ++j)
                pt[static_cast<std::size_t>(j)] =
                    static_cast<double>(i[static_cast<std::size_t>(j)]) / (m + 1);
            slot = f(pt);
            ++out.samples_used;
        }
        return slot;
    };

    long cubes = 1;
    for (int j = 0; j < d; ++j) cubes *= m + 1;
    out.values.resize(static_cast<std::size_t>(cubes));
    std::vector<int> i(static_cast<std::size_t>(d), 0);
    for (long c = 0; c < cubes; ++c) {
        std::vector<int> upper(i.begin(), i.end());
        for (int j = 0; j < d; ++j) ++upper[static_cast<std::size_t>(j)];
        out.values[static_cast<std::size_t>(c)] = 0.5 * (corner(i) + corner(upper));
        for (int j = 0; j < d; ++j) {
            if (++i[static_cast<std::size_t>(j)] <= m) break;
            i[static_cast<std::size_t>(j)] = 0;
        }
    }
    return out;
}

inline double det_grid_error_bound(int d, int m, double range_width = 1.0) {
    return range_width * static_cast<double>(d) / (2.0 * (m + 1));
}

// midpoint-rule L1 distance between two evaluable functions on [0,1]^d
template <typename F1, typename F2>
double l1_distance_quadrature(F1&& f1, F2&& f2, int d, int per_axis) {
    std::vector<double> pt(static_cast<std::size_t>(d), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double sum = 0.0;
    long total = 1;
    for (int j = 0; j < d; ++j) total *= per_axis;
    for (long c = 0; c < total; ++c) {
        for (int j = 0; j < d; ++j)
            pt[static_cast<std::size_t>(j)] =
                (idx[static_cast<std::size_t>(j)] + 0.5) / per_axis;
        sum += std::abs(f1(pt) - f2(pt));
        for (int j = 0; j < d; ++j) {
            if (++idx[static_cast<std::size_t>(j)] < per_axis) break;
            idx[static_cast<std::size_t>(j)] = 0;
        }
    }
    return sum / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Haar wavelets on dyadic cuboids. Per-axis index alpha >= 1 decomposes as
// alpha = 2^lambda + kappa with 0 <= kappa < 2^lambda; alpha = 0 is the
// constant. The last dyadic interval is right-closed.

struct WaveletIndex {
    std::vector<int> alpha;

    int d() const { return static_cast<int>(alpha.size()); }
    int support_count() const {  // |alpha|_0
        int c = 0;
        for (int a : alpha) c += a > 0;
        return c;
    }
    static int level_of(int a) {  // lambda_j, requires a >= 1
        int l = 0;
        while ((2 << l) <= a) ++l;
        return l;
    }
    int level_sum() const {  // |lambda|_+
        int s = 0;
        for (int a : alpha)
            if (a >= 1) s += level_of(a);
        return s;
    }
    bool operator==(const WaveletIndex& o) const { return alpha == o.alpha; }
};

inline int dyadic_cell(double x, int level) {  // cell of x at resolution 2^level
    const long cells = 1L << level;
    long c = static_cast<long>(std::floor(x * static_cast<double>(cells)));
    return static_cast<int>(std::clamp(c, 0L, cells - 1));
}

inline double haar_eval_1d(int a, double x) {
    if (a == 0) return 1.0;
    const int lambda = WaveletIndex::level_of(a);
    const int kappa = a - (1 << lambda);
    const int cell = dyadic_cell(x, lambda + 1);
    if (cell == 2 * kappa) return -std::exp2(0.5 * lambda);
    if (cell == 2 * kappa + 1) return std::exp2(0.5 * lambda);
    return 0.0;
}

inline double haar_eval(const WaveletIndex& w, const std::vector<double>& x) {
    double v = 1.0;
    for (int j = 0; j < w.d(); ++j) {
        v *= haar_eval_1d(w.alpha[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

// #A = sum_{l<=k} binom(d,l) (2^r - 1)^l
inline double index_set_size(int d, int k, int r) {
    double sum = 0.0, binom = 1.0;
    const double w = std::exp2(r) - 1.0;
    for (int l = 0; l <= k; ++l) {
        sum += binom * std::pow(w, l);
        binom = binom * (d - l) / (l + 1);
    }
    return sum;
}

// all indices with |alpha|_0 <= k and every level below r
inline std::vector<WaveletIndex> enumerate_index_set(int d, int k, int r, long cap = 2000000) {
    if (k < 0 || k > d) throw std::invalid_argument("enumerate_index_set: need 0 <= k <= d");
    if (r < 1) throw std::invalid_argument("enumerate_index_set: need r >= 1");
    const double size = index_set_size(d, k, r);
    if (size > static_cast<double>(cap))
        throw std::invalid_argument("enumerate_index_set: index set has " +
                                    std::to_string(size) + " elements, above the cap");
    std::vector<WaveletIndex> out;
    WaveletIndex w;
    w.alpha.assign(static_cast<std::size_t>(d), 0);
    const int amax = (1 << r) - 1;
    std::function<void(int, int)> rec = [&](int j, int used) {
        if (j == d) {
            out.push_back(w);
            return;
        }
        w.alpha[static_cast<std::size_t>(j)] = 0;
        rec(j + 1, used);
        if (used < k) {
            for (int a = 1; a <= amax; ++a) {
                w.alpha[static_cast<std::size_t>(j)] = a;
                rec(j + 1, used + 1);
            }
            w.alpha[static_cast<std::size_t>(j)] = 0;
        }
    };
    rec(0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// The wavelet sampling algorithm: estimate the coefficients over the index
// set from n uniform samples. Unbiased per coefficient, variance <= 1/n;
// expected L1 error d/2^{r+1} + sqrt(sqrt(dr)/(k+1) + #A/n).

struct HaarApproximant {
    int d = 1, k = 1, r = 1;
    long n = 0;
    std::vector<WaveletIndex> indices;
    std::vector<double> coef;
    // retained sample information, needed by the on-demand evaluation path
    std::vector<std::vector<double>> sample_points;
    std::vector<double> sample_values;

    double eval(const std::vector<double>& x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < indices.size(); ++i)
            s += coef[i] * haar_eval(indices[i], x);
        return s;
    }
};

inline double haar_mc_error_bound(int d, int k, int r, long n) {
    return static_cast<double>(d) / std::exp2(r + 1) +
           std::sqrt(std::sqrt(static_cast<double>(d) * r) / (k + 1) +
                     index_set_size(d, k, r) / static_cast<double>(n));
}

inline HaarApproximant haar_mc_approximate(const MonotoneOracle& f, int d, long n, int k, int r,
                                           RandomStream& g, bool keep_samples = true) {
    if (n < 1) throw std::invalid_argument("haar_mc_approximate: n must be >= 1");
    HaarApproximant out;
    out.d = d;
    out.k = k;
    out.r = r;
    out.n = n;
    out.indices = enumerate_index_set(d, k, r);
    out.coef.assign(out.indices.size(), 0.0);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (long i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = g.uniform01();
        const double fx = f(x);
        for (std::size_t a = 0; a < out.indices.size(); ++a)
            out.coef[a] += haar_eval(out.indices[a], x) * fx;
        if (keep_samples) {
            out.sample_points.push_back(x);
            out.sample_values.push_back(fx);
        }
    }
    for (double& c : out.coef) c /= static_cast<double>(n);
    return out;
}

// pointwise sign of g, with sgn(0) := +1
inline std::function<double(const std::vector<double>&)> sign_refine(
    const HaarApproximant& g) {
    return [&g](const std::vector<double>& x) { return g.eval(x) >= 0.0 ? 1.0 : -1.0; };
}

inline double sign_refined_error_bound(int d, int k, int r, long n) {
    return static_cast<double>(d) / std::exp2(r + 1) +
           2.0 * std::sqrt(static_cast<double>(d) * r) / (k + 1) +
           2.0 * index_set_size(d, k, r) / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Fast on-demand evaluation. For a query x and a sample X, only the number b
// of axes sharing the resolution-r cell matters:
//   sum_{alpha in A} psi_alpha(X) psi_alpha(x) = chi(b)
// with chi(b) = sum_{l<=b^k} binom(b,l)(2^r-1)^l sum_{m<=(d-b)^(k-l)} binom(d-b,m)(-1)^m.

inline double chi_value(int b, int d, int k, int r) {
    const double w = std::exp2(r) - 1.0;
    double total = 0.0;
    double binom_bl = 1.0;
    for (int l = 0; l <= std::min(b, k); ++l) {
        double inner = 0.0, binom_dm = 1.0;
        for (int m2 = 0; m2 <= std::min(d - b, k - l); ++m2) {
            inner += binom_dm * ((m2 % 2 == 0) ? 1.0 : -1.0);
            binom_dm = binom_dm * (d - b - m2) / (m2 + 1);
        }
        total += binom_bl * std::pow(w, l) * inner;
        binom_bl = binom_bl * (b - l) / (l + 1);
    }
    return total;
}

inline int shared_cell_count(const std::vector<double>& sample_x,
                             const std::vector<double>& query_x, int r) {
    int b = 0;
    for (std::size_t j = 0; j < sample_x.size(); ++j)
        b += dyadic_cell(sample_x[j], r) == dyadic_cell(query_x[j], r);
    return b;
}

// contribution chi(b)/n of one sample to the output value at query_x
inline double point_influence(const std::vector<double>& sample_x,
                              const std::vector<double>& query_x, long n, int k, int r) {
    const int d = static_cast<int>(sample_x.size());
    return chi_value(shared_cell_count(sample_x, query_x, r), d, k, r) /
           static_cast<double>(n);
}

// evaluation via the influence values; must agree with HaarApproximant::eval
inline double eval_via_influence(const HaarApproximant& g, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.sample_points.size(); ++i)
        s += g.sample_values[i] * point_influence(g.sample_points[i], x, g.n, g.k, g.r);
    return s;
}

// ---------------------------------------------------------------------------
// Piecewise-constant functions on the dyadic grid of resolution r (2^{rd}
// cells). These carry the exact transform oracle and the random monotone
// test instances.

struct CellFunction {
    int d = 1;
    int r = 1;                    // cells per axis = 2^r
    std::vector<double> values;   // flat, first axis fastest

    long cells_per_axis() const { return 1L << r; }
    long cell_count() const {
        long c = 1;
        for (int j = 0; j < d; ++j) c *= cells_per_axis();
        return c;
    }
    long cell_index(const std::vector<double>& x) const {
        long idx = 0, stride = 1;
        for (int j = 0; j < d; ++j) {
            idx += dyadic_cell(x[static_cast<std::size_t>(j)], r) * stride;
            stride *= cells_per_axis();
        }
        return idx;
    }
    double operator()(const std::vector<double>& x) const {
        return values[static_cast<std::size_t>(cell_index(x))];
    }
    bool is_monotone() const {
        const long per = cells_per_axis();
        long stride = 1;
        for (int j = 0; j < d; ++j) {
            for (long c = 0; c < cell_count(); ++c) {
                const long coord = (c / stride) % per;
                if (coord + 1 < per &&
                    values[static_cast<std::size_t>(c)] >
                        values[static_cast<std::size_t>(c + stride)] + 1e-15)
                    return false;
            }
            stride *= per;
        }
        return true;
    }
};

// monotone staircase built as the max of corner levels: each random corner
// dominates an upper-orthant of cells on which its level applies
inline CellFunction random_monotone_cells(int d, int r, int corners, RandomStream& g) {
    CellFunction f;
    f.d = d;
    f.r = r;
    const long per = f.cells_per_axis();
    const double base = -1.0 + g.uniform01();
    f.values.assign(static_cast<std::size_t>(f.cell_count()), base);
    for (int t = 0; t < corners; ++t) {
        std::vector<long> corner(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            corner[static_cast<std::size_t>(j)] = static_cast<long>(g.below(static_cast<std::uint64_t>(per)));
        const double level = base + (1.0 - base) * g.uniform01();
        for (long c = 0; c < f.cell_count(); ++c) {
            bool dominated = true;
            long rest = c;
            for (int j = 0; j < d && dominated; ++j) {
                if (rest % per < corner[static_cast<std::size_t>(j)]) dominated = false;
                rest /= per;
            }
            if (dominated)
                f.values[static_cast<std::size_t>(c)] =
                    std::max(f.values[static_cast<std::size_t>(c)], level);
        }
    }
    return f;
}

// Exact transform of the resolution-r projection f_r: separable pyramid along
// each axis. Output is the full coefficient hypercube indexed like the cells
// (per-axis index alpha in {0..2^r-1}).
inline std::vector<double> haar_transform_bruteforce(const CellFunction& f) {
    if (f.d * f.r > 20)
        throw std::invalid_argument("haar_transform_bruteforce: budget d*r <= 20 exceeded");
    const long per = f.cells_per_axis();
    std::vector<double> c = f.values;
    std::vector<double> line(static_cast<std::size_t>(per));
    std::vector<double> avg(static_cast<std::size_t>(per));
    long stride = 1;
    for (int axis = 0; axis < f.d; ++axis) {
        const long blocks = f.cell_count() / (per * stride);
        for (long blk = 0; blk < blocks; ++blk) {
            for (long lo = 0; lo < stride; ++lo) {
                const long base = blk * per * stride + lo;
                for (long i = 0; i < per; ++i)
                    line[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(base + i * stride)];
                // pyramid: averages shrink, details fill the upper half
                avg = line;
                long len = per;
                int lambda = f.r - 1;
                while (len > 1) {
                    for (long kq = 0; kq < len / 2; ++kq) {
                        line[static_cast<std::size_t>((len / 2) + kq)] =
                            std::exp2(-0.5 * lambda - 1.0) *
                            (avg[static_cast<std::size_t>(2 * kq + 1)] -
                             avg[static_cast<std::size_t>(2 * kq)]);
                        avg[static_cast<std::size_t>(kq)] =
                            0.5 * (avg[static_cast<std::size_t>(2 * kq)] +
                                   avg[static_cast<std::size_t>(2 * kq + 1)]);
                    }
                    len /= 2;
                    --lambda;
                }
                line[0] = avg[0];
                for (long i = 0; i < per; ++i)
                    c[static_cast<std::size_t>(base + i * stride)] = line[static_cast<std::size_t>(i)];
            }
        }
        stride *= per;
    }
    return c;
}

// sum over |alpha|_0 > k of the exact squared coefficients; bounded by
// sqrt(d r)/(k+1) for monotone [-1,1]-valued inputs
inline double wavelet_tail_mass(const CellFunction& f, int k) {
    const auto c = haar_transform_bruteforce(f);
    const long per = f.cells_per_axis();
    double mass = 0.0;
    for (long idx = 0; idx < f.cell_count(); ++idx) {
        int support = 0;
        long rest = idx;
        for (int j = 0; j < f.d; ++j) {
            support += rest % per > 0;
            rest /= per;
        }
        if (support > k) mass += c[static_cast<std::size_t>(idx)] * c[static_cast<std::size_t>(idx)];
    }
    return mass;
}

inline double wavelet_tail_bound(int d, int r, int k) {
    return std::sqrt(static_cast<double>(d) * r) / (k + 1);
}

// ---------------------------------------------------------------------------
// Boolean functions as +-1 tables over {0,1}^d, index lexicographic with the
// first coordinate most significant (matching the bit-string file format).

struct BooleanTable {
    int d = 1;
    std::vector<std::int8_t> v;  // +-1, size 2^d

    long size() const { return 1L << d; }
    int bit(long index, int j) const {  // coordinate j of the point at index
        return static_cast<int>((index >> (d - 1 - j)) & 1);
    }
    double value(long index) const { return static_cast<double>(v[static_cast<std::size_t>(index)]); }

    bool is_monotone() const {
        for (long x = 0; x < size(); ++x)
            for (int j = 0; j < d; ++j)
                if (!bit(x, j) && v[static_cast<std::size_t>(x)] >
                                      v[static_cast<std::size_t>(x | (1L << (d - 1 - j)))])
                    return false;
        return true;
    }
};

inline double boolean_dist(const BooleanTable& a, const BooleanTable& b) {
    if (a.d != b.d) throw std::invalid_argument("boolean_dist: dimension mismatch");
    long count = 0;
    for (long x = 0; x < a.size(); ++x)
        if (a.v[static_cast<std::size_t>(x)] != b.v[static_cast<std::size_t>(x)]) ++count;
    return static_cast<double>(count) / static_cast<double>(a.size());
}

// full transform onto the parity basis prod_j x_j^{alpha_j}, x in {-1,+1}:
// butterfly per axis, coefficient index packed like the table index
inline std::vector<double> boolean_fourier_transform(const BooleanTable& f) {
    if (f.d > 20) throw std::invalid_argument("boolean_fourier_transform: d <= 20 tables only");
    std::vector<double> c(f.v.begin(), f.v.end());
    const long n = f.size();
    for (long half = 1; half < n; half *= 2) {
        for (long base = 0; base < n; base += 2 * half) {
            for (long i = 0; i < half; ++i) {
                const double a = c[static_cast<std::size_t>(base + i)];          // x_j = 0 -> -1
                const double b = c[static_cast<std::size_t>(base + half + i)];   // x_j = 1 -> +1
                c[static_cast<std::size_t>(base + i)] = a + b;
                c[static_cast<std::size_t>(base + half + i)] = b - a;
            }
        }
    }
    for (double& x : c) x /= static_cast<double>(n);
    return c;
}

// sum_{|alpha|_1 > k} fhat^2 <= sqrt(d)/(k+1) for monotone f
inline double boolean_tail_mass(const BooleanTable& f, int k) {
    if (f.d <= 12 && !f.is_monotone())
        throw std::invalid_argument("boolean_tail_mass: input is not monotone");
    const auto c = boolean_fourier_transform(f);
    double mass = 0.0;
    for (long a = 0; a < f.size(); ++a)
        if (std::popcount(static_cast<unsigned long>(a)) > k)
            mass += c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)];
    return mass;
}

inline double boolean_tail_bound(int d, int k) {
    return std::sqrt(static_cast<double>(d)) / (k + 1);
}

inline double boolean_learn_error_bound(int d, int k, long n) {
    double setsize = 0.0, binom = 1.0;
    for (int l = 0; l <= k; ++l) {
        setsize += binom;
        binom = binom * (d - l) / (l + 1);
    }
    return std::sqrt(static_cast<double>(d)) / (k + 1) + setsize / static_cast<double>(n);
}

// Low-degree parity sampling: estimate fhat(alpha) for |alpha|_1 <= k from n
// uniform samples and output the sign of the estimate. The stratified option
// fixes the leading log2(n) coordinates to the sample counter so that
// n = 2^d with k = d degenerates to exact recovery.
inline BooleanTable boolean_fourier_learn(const std::function<double(long)>& f_oracle, int d,
                                          long n, int k, RandomStream& g,
                                          bool stratified = false) {
    if (d > 20) throw std::invalid_argument("boolean_fourier_learn: d <= 20 tables only");
    if (n < 1 || k < 1 || k > d)
        throw std::invalid_argument("boolean_fourier_learn: need n >= 1 and 1 <= k <= d");
    int strat_bits = 0;
    if (stratified) {
        while ((1L << (strat_bits + 1)) <= n && strat_bits + 1 <= d) ++strat_bits;
        if ((1L << strat_bits) != n)
            throw std::invalid_argument("boolean_fourier_learn: stratified needs n = 2^j");
    }

    std::vector<long> alphas;
    for (long a = 0; a < (1L << d); ++a)
        if (std::popcount(static_cast<unsigned long>(a)) <= k) alphas.push_back(a);

    std::vector<double> h(alphas.size(), 0.0);
    for (long i = 0; i < n; ++i) {
        long x = 0;
        if (stratified) {
            // leading coordinates from the counter, the rest random
            x = i << (d - strat_bits);
            for (int j = strat_bits; j < d; ++j)
                if (g.bernoulli(0.5)) x |= 1L << (d - 1 - j);
        } else {
            x = static_cast<long>(g.below(1ULL << d));
        }
        const double fx = f_oracle(x);
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            const int parity =
                std::popcount(static_cast<unsigned long>(alphas[ai] & ~x) &
                              ((1UL << d) - 1)) & 1;
            h[ai] += parity ? -fx : fx;
        }
    }

    BooleanTable out;
    out.d = d;
    out.v.resize(static_cast<std::size_t>(1L << d));
    for (long x = 0; x < (1L << d); ++x) {
        double s = 0.0;
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            const int parity =
                std::popcount(static_cast<unsigned long>(alphas[ai] & ~x) &
                              ((1UL << d) - 1)) & 1;
            s += parity ? -h[ai] : h[ai];
        }
        out.v[static_cast<std::size_t>(x)] = (s >= 0.0) ? 1 : -1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adversarial instances

// the diagonal split 1[|x|_1 >= d/2], rescaled to +-1
inline MonotoneOracle diagonal_split(int d) {
    return [d](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s >= static_cast<double>(d) / 2.0 ? 1.0 : -1.0;
    };
}

inline BooleanTable boolean_diagonal_split(int d) {
    BooleanTable t;
    t.d = d;
    t.v.resize(static_cast<std::size_t>(1L << d));
    for (long x = 0; x < (1L << d); ++x)
        t.v[static_cast<std::size_t>(x)] =
            2 * std::popcount(static_cast<unsigned long>(x)) >= d ? 1 : -1;
    return t;
}

// staircase fooling family on m^d cells: f|C_i = (|i|_1 + delta_i)/(d(m-1)+1)
struct StaircaseInstance {
    int d = 1, m = 2;
    std::vector<std::uint8_t> delta;  // one bit per cell, flat, first axis fastest

    long cell_count() const {
        long c = 1;
        for (int j = 0; j < d; ++j) c *= m;
        return c;
    }
    long cell_index(const std::vector<double>& x) const {
        long idx = 0, stride = 1;
        for (int j = 0; j < d; ++j) {
            long c = static_cast<long>(std::floor(x[static_cast<std::size_t>(j)] * m));
            c = std::clamp(c, 0L, static_cast<long>(m) - 1);
            idx += c * stride;
            stride *= m;
        }
        return idx;
    }
    double operator()(const std::vector<double>& x) const {
        const long idx = cell_index(x);
        long rest = idx, level = 0;
        for (int j = 0; j < d; ++j) {
            level += rest % m;
            rest /= m;
        }
        return (static_cast<double>(level) + delta[static_cast<std::size_t>(idx)]) /
               (static_cast<double>(d) * (m - 1) + 1.0);
    }
};

inline StaircaseInstance staircase_instance(int d, int m, int delta_fill) {
    StaircaseInstance s;
    s.d = d;
    s.m = m;
    s.delta.assign(static_cast<std::size_t>(s.cell_count()),
                   static_cast<std::uint8_t>(delta_fill));
    return s;
}

inline StaircaseInstance random_staircase_instance(int d, int m, RandomStream& g) {
    StaircaseInstance s = staircase_instance(d, m, 0);
    for (auto& b : s.delta) b = static_cast<std::uint8_t>(g.bernoulli(0.5));
    return s;
}

// information diameter of the staircase family when the delta bits on the
// sampled cells are pinned and all others flip freely
inline double staircase_information_diameter(int d, int m,
                                             const std::vector<std::vector<double>>& samples) {
    StaircaseInstance probe = staircase_instance(d, m, 0);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(probe.cell_count()), 0);
    for (const auto& x : samples) seen[static_cast<std::size_t>(probe.cell_index(x))] = 1;
    long unseen = 0;
    for (auto b : seen) unseen += b == 0;
    return static_cast<double>(unseen) / static_cast<double>(probe.cell_count()) /
           (static_cast<double>(d) * (m - 1) + 1.0);
}

inline double staircase_fooling_lower_bound(int d, int m, long n) {
    const double cells = std::pow(static_cast<double>(m), d);
    return 0.5 * std::max(0.0, 1.0 - static_cast<double>(n) / cells) /
           (static_cast<double>(d) * (m - 1) + 1.0);
}

// random upper-set instance: f_U(x) = 1[|x|_1 > b or exists u in U: u <= x],
// U drawn by independent Bernoulli(p) membership over the level-t slice
struct FUInstance {
    int d = 1, t = 1, b = 1;
    std::vector<std::uint64_t> witnesses;

    double eval01(std::uint64_t x) const {  // {0,1}-valued
        if (std::popcount(x) > b) return 1.0;
        for (std::uint64_t u : witnesses)
            if ((u & ~x) == 0) return 1.0;
        return 0.0;
    }
    double eval_pm(std::uint64_t x) const { return 2.0 * eval01(x) - 1.0; }

    BooleanTable table() const {
        if (d > 24)
            throw std::invalid_argument("FUInstance: d > 24 stays in oracle form, never a table");
        if (d > 20) throw std::invalid_argument("FUInstance: tables need d <= 20");
        BooleanTable out;
        out.d = d;
        out.v.resize(static_cast<std::size_t>(1L << d));
        for (long i = 0; i < (1L << d); ++i) {
            // table index is lexicographic over coordinates; the mask view is
            // equivalent up to coordinate relabeling
            out.v[static_cast<std::size_t>(i)] =
                eval01(static_cast<std::uint64_t>(i)) > 0.5 ? 1 : -1;
        }
        return out;
    }
};

inline FUInstance make_fU(int d, int t, int b, double p, RandomStream& g) {
    if (t < 1 || t > b || b > d) throw std::invalid_argument("make_fU: need 1 <= t <= b <= d");
    FUInstance out;
    out.d = d;
    out.t = t;
    out.b = b;
    // iterate the level-t slice via the bit-twiddling successor
    std::uint64_t w = (1ULL << t) - 1ULL;
    const std::uint64_t top = 1ULL << d;
    while (w < top) {
        if (g.bernoulli(p)) out.witnesses.push_back(w);
        const std::uint64_t c = w & (~w + 1);
        const std::uint64_t rr = w + c;
        w = (((rr ^ w) >> 2) / c) | rr;
    }
    return out;
}

// ---------------------------------------------------------------------------
// truth tables as bit strings, row-major over {0,1}^d lexicographic

inline std::string boolean_to_bits(const BooleanTable& t) {
    std::string s;
    s.reserve(static_cast<std::size_t>(t.size()));
    for (long i = 0; i < t.size(); ++i) s.push_back(t.v[static_cast<std::size_t>(i)] > 0 ? '1' : '0');
    return s;
}

inline BooleanTable boolean_from_bits(const std::string& bits) {
    const std::size_t n = bits.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("boolean_from_bits: length must be a power of two");
    BooleanTable t;
    t.d = static_cast<int>(std::countr_zero(n));
    if (t.d > 20) throw std::invalid_argument("boolean_from_bits: d <= 20 only");
    t.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw std::invalid_argument("boolean_from_bits: characters must be 0/1");
        t.v[i] = bits[i] == '1' ? 1 : -1;
    }
    return t;
}

// optional spot check of the monotonicity contract for real-valued oracles
inline bool monotonicity_spot_check(const MonotoneOracle& f, int d, RandomStream& g,
                                    int pairs = 1000) {
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int t = 0; t < pairs; ++t) {
        for (int j = 0; j < d; ++j) {
            const double a = g.uniform01(), b = g.uniform01();
            lo[static_cast<std::size_t>(j)] = std::min(a, b);
            hi[static_cast<std::size_t>(j)] = std::max(a, b);
        }
        if (f(lo) > f(hi) + 1e-12) return false;
    }
    return true;
}

} // namespace mcfa::monomc
