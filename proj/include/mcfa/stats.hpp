#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcfa {

// Replicate statistics: mean, standard error of the mean, count.
struct NormEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long reps = 0;
};

// Welford accumulator
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }
    long count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const {
        return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }
    NormEstimate estimate() const { return {mean(), std_error(), n_}; }

private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// least-squares slope of y against x
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// One report row: experiment parameters (already formatted), the replicate
// mean with its standard error, the bound it is compared against and the
// resulting pass flag. Every row carries its bound; no bare numbers.
struct ReportRow {
    std::vector<std::string> params;
    double replicate_mean = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<std::string> param_columns;
    std::vector<ReportRow> rows;

    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    const ReportRow* first_failure() const {
        for (const auto& r : rows)
            if (!r.pass) return &r;
        return nullptr;
    }
};

} // namespace mcfa
