#include "spectral_lab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_lab/core.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

ScalingFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    require(xs.size() == ys.size() && xs.size() >= 2, "fit needs at least two points");
    ScalingFit f;
    f.xs = xs;
    f.ys = ys;
    const double mx = mean(xs), my = mean(ys);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    require(sxx > 0.0, "fit needs distinct x values");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.slope * xs[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

ScalingFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "size mismatch");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0.0 && y[i] > 0.0, "log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

Table ScalingFit::table(const std::string& name) const {
    Table t{name, {"x", "y"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) t.add({xs[i], ys[i]});
    return t;
}

double mean(const std::vector<double>& v) {
    require(!v.empty(), "mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    require(v.size() >= 2, "stddev needs two samples");
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
    require(!v.empty(), "median of empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Interval bootstrap_slope_ci(const std::vector<double>& x, const std::vector<std::vector<double>>& groups, int n_boot,
                            double level, std::uint64_t seed) {
    require(x.size() == groups.size() && n_boot >= 10 && level > 0.0 && level < 1.0, "bad bootstrap arguments");
    CounterRng rng(seed);
    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(n_boot));
    std::vector<double> means(groups.size());
    for (int b = 0; b < n_boot; ++b) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const auto& s = groups[g];
            double acc = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i)
                acc += s[static_cast<std::size_t>(rng.uniform() * static_cast<double>(s.size()))];
            means[g] = acc / static_cast<double>(s.size());
        }
        slopes.push_back(loglog_fit(x, means).slope);
    }
    std::sort(slopes.begin(), slopes.end());
    const double a = (1.0 - level) / 2.0;
    auto pick = [&](double p) {
        const auto i = static_cast<std::size_t>(std::clamp(p * static_cast<double>(slopes.size() - 1), 0.0,
                                                           static_cast<double>(slopes.size() - 1)));
        return slopes[i];
    };
    return {pick(a), pick(1.0 - a)};
}

}  // namespace slab
