#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectral_lab/table_io.hpp"

namespace slab {

// Least-squares line y = slope x + intercept through stored points. For
// log-log fits xs and ys already hold the logarithms.
struct ScalingFit {
    std::vector<double> xs, ys;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    Table table(const std::string& name) const;  // columns x, y
};

ScalingFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);
// Fits log y against log x.
ScalingFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);  // sample (n-1) normalization
double median(std::vector<double> v);

// Percentile bootstrap interval for the log-log slope of the group means:
// each group (one per x) is resampled with replacement.
struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};
Interval bootstrap_slope_ci(const std::vector<double>& x, const std::vector<std::vector<double>>& groups, int n_boot,
                            double level, std::uint64_t seed);

}  // namespace slab
