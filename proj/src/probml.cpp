#include "spectral_lab/probml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

std::vector<double> draw_samples(const Sampler& sampler, std::size_t n, std::uint64_t master) {
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = sampler(derive_seed(master, i)); });
    return out;
}

ExceedanceCurve exceedance_from_samples(const std::vector<double>& samples, const std::vector<double>& Ms, double C,
                                        const std::string& statistic) {
    if (samples.size() < 100) throw Error(Errc::insufficient_samples, "need at least 100 samples");
    require(C > 0.0, "scale C must be positive");
    require(std::is_sorted(Ms.begin(), Ms.end()), "M values must be increasing");
    ExceedanceCurve c;
    c.statistic = statistic;
    c.Ms = Ms;
    c.C = C;
    c.n_samples = samples.size();
    const double n = static_cast<double>(samples.size());
    for (double M : Ms) {
        std::size_t k = 0;
        for (double s : samples) k += s > M * C;
        c.raw.push_back(static_cast<double>(k) / n);
    }
    c.probs = c.raw;
    for (std::size_t i = 1; i < c.probs.size(); ++i) c.probs[i] = std::min(c.probs[i], c.probs[i - 1]);
    c.regularized = c.probs != c.raw;
    for (double p : c.probs) c.censored.push_back(p < kCensorCount / n);
    return c;
}

ExceedanceCurve exceedance_curve(const Sampler& sampler, const std::vector<double>& Ms, std::size_t n_samples,
                                 double C, std::uint64_t master, const std::string& statistic) {
    if (n_samples < 100) throw Error(Errc::insufficient_samples, "need at least 100 samples");
    return exceedance_from_samples(draw_samples(sampler, n_samples, master), Ms, C, statistic);
}

Table ExceedanceCurve::table(const std::string& name) const {
    Table t{name, {"M", "M2", "raw", "prob", "censored"}, {}};
    for (std::size_t i = 0; i < Ms.size(); ++i)
        t.add({Ms[i], Ms[i] * Ms[i], raw[i], probs[i], static_cast<long long>(censored[i])});
    return t;
}

TailFit fit_tail(const ExceedanceCurve& curve) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < curve.Ms.size(); ++i)
        if (!curve.censored[i] && curve.probs[i] > 0.0) {
            x.push_back(curve.Ms[i] * curve.Ms[i]);
            y.push_back(std::log(curve.probs[i]));
        }
    if (x.size() < 3) throw Error(Errc::insufficient_samples, "fewer than 3 uncensored points");
    TailFit t;
    t.fit = linear_fit(x, y);
    t.c = -t.fit.slope;
    t.intercept = t.fit.intercept;
    t.r2 = t.fit.r2;
    t.points = x.size();
    return t;
}

MaxScalingReport max_scaling(const std::vector<std::size_t>& Ns, Distribution dist, std::size_t n_trials,
                             std::uint64_t seed) {
    require(!Ns.empty() && n_trials >= 1, "empty sweep");
    const auto [lo, hi] = std::minmax_element(Ns.begin(), Ns.end());
    require(*lo >= 1 && static_cast<double>(*hi) >= 100.0 * static_cast<double>(*lo), "N list must span >= 2 decades");
    MaxScalingReport r;
    r.Ns = Ns;
    std::vector<double> xs, ys;
    for (std::size_t t = 0; t < Ns.size(); ++t) {
        const std::size_t N = Ns[t];
        std::vector<double> mx(n_trials);
        parallel_for(n_trials, [&](std::size_t i) {
            CounterRng rng(derive_seed(seed, (static_cast<std::uint64_t>(t) << 40) | i));
            double m = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                double v = 1.0;
                if (dist == Distribution::gaussian) v = rng.normal();
                else if (dist == Distribution::bernoulli) v = rng.sign();
                m = std::max(m, std::abs(v));
            }
            mx[i] = m;
        });
        const double e = mean(mx);
        r.mean_max.push_back(e);
        r.ratio.push_back(N > 1 ? e / std::sqrt(2.0 * std::log(static_cast<double>(N)))
                                : std::numeric_limits<double>::quiet_NaN());
        xs.push_back(std::sqrt(std::log(static_cast<double>(N))));
        ys.push_back(e);
    }
    const ScalingFit f = linear_fit(xs, ys);
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.r2 = f.r2;
    return r;
}

Table MaxScalingReport::table(const std::string& name) const {
    Table t{name, {"N", "sqrt_log_N", "mean_max", "ratio"}, {}};
    for (std::size_t i = 0; i < Ns.size(); ++i)
        t.add({static_cast<long long>(Ns[i]), std::sqrt(std::log(static_cast<double>(Ns[i]))), mean_max[i], ratio[i]});
    return t;
}

std::vector<Eigen::VectorXcd> probe_image(const Eigen::MatrixXcd& S, std::size_t n_probe, std::uint64_t seed) {
    require(n_probe >= 1, "need probes");
    std::vector<Eigen::VectorXcd> img(n_probe);
    img[0] = Eigen::VectorXcd::Zero(S.rows());
    parallel_for(n_probe - 1, [&](std::size_t i) {
        CounterRng rng(derive_seed(seed, i));
        Eigen::VectorXcd x(S.cols());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double re = rng.normal();
            x(j) = cplx(re, rng.normal());
        }
        x /= x.norm();
        img[i + 1] = S * x;
    });
    return img;
}

double linf_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

namespace {

bool within(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double eps2) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::norm(a(i) - b(i)) > eps2) return false;
    return true;
}

}  // namespace

std::vector<std::size_t> greedy_centers(const std::vector<Eigen::VectorXcd>& pts, double eps) {
    require(eps > 0.0, "eps must be positive");
    const double eps2 = eps * eps;
    std::vector<std::size_t> centers;
    std::vector<char> covered(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (covered[i]) continue;
        centers.push_back(i);
        covered[i] = 1;
        parallel_for(pts.size() - i - 1, [&](std::size_t t) {
            const std::size_t j = i + 1 + t;
            if (!covered[j] && within(pts[i], pts[j], eps2)) covered[j] = 1;
        });
    }
    return centers;
}

namespace {

void check_covering_size(const Eigen::MatrixXcd& S, std::size_t n_probe) {
    require(S.cols() <= 64 && S.rows() <= 4096, "covering is limited to dim <= 64, m <= 4096");
    require(n_probe >= 10000, "need at least 1e4 probes");
}

}  // namespace

std::size_t covering_number(const Eigen::MatrixXcd& S, double eps, std::size_t n_probe, std::uint64_t seed) {
    check_covering_size(S, n_probe);
    return greedy_centers(probe_image(S, n_probe, seed), eps).size();
}

CoveringReport covering_sweep(const Eigen::MatrixXcd& S, std::vector<double> eps_list, std::size_t n_probe,
                              std::uint64_t seed) {
    check_covering_size(S, n_probe);
    std::sort(eps_list.begin(), eps_list.end());
    CoveringReport r;
    r.eps_list = eps_list;
    r.m = static_cast<std::size_t>(S.rows());
    r.n_probe = n_probe;
    r.S_norm = S.rowwise().norm().maxCoeff();
    const auto img = probe_image(S, n_probe, seed);
    for (double e : eps_list) r.raw.push_back(greedy_centers(img, e).size());
    r.N_eps = r.raw;
    for (std::size_t i = 1; i < r.N_eps.size(); ++i) r.N_eps[i] = std::min(r.N_eps[i], r.N_eps[i - 1]);
    return r;
}

std::vector<double> CoveringReport::sudakov_ratio() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < eps_list.size(); ++i)
        out.push_back(std::log(static_cast<double>(N_eps[i])) * eps_list[i] * eps_list[i] /
                      (std::log(static_cast<double>(m)) * S_norm * S_norm));
    return out;
}

NetHierarchy build_nets(const std::vector<Eigen::VectorXcd>& image, int k_max) {
    require(k_max >= 0, "k_max must be >= 0");
    NetHierarchy h;
    for (int k = 0; k <= k_max; ++k) {
        const double r = std::ldexp(1.0, -k);
        h.radii.push_back(r);
        std::vector<Eigen::VectorXcd> c;
        for (std::size_t i : greedy_centers(image, r)) c.push_back(image[i]);
        h.centers.push_back(std::move(c));
    }
    return h;
}

ChainResult chaining_decompose(const Eigen::MatrixXcd& S, const Eigen::VectorXcd& a, const NetHierarchy& nets,
                               double tol, double p_prime) {
    require(!nets.radii.empty(), "empty net hierarchy");
    if (nets.radii.back() > tol) throw Error(Errc::net_too_coarse, "finest net radius exceeds the tolerance");
    ChainResult r;
    r.target = S * a;
    Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(r.target.size());
    Eigen::VectorXcd sum = prev;
    for (std::size_t k = 0; k < nets.radii.size(); ++k) {
        const auto& cs = nets.centers[k];
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const double dd = linf_distance(cs[i], r.target);
            if (dd < best) {
                best = dd;
                arg = i;
            }
        }
        Eigen::VectorXcd pi;
        if (best <= nets.radii[k]) {
            pi = cs[arg];
        } else {
            pi = r.target;
            ++r.fallbacks;
        }
        Eigen::VectorXcd xi = pi - prev;
        r.xi_inf.push_back(xi.size() ? xi.cwiseAbs().maxCoeff() : 0.0);
        double s = 0.0;
        for (Eigen::Index i = 0; i < xi.size(); ++i) s += std::pow(std::abs(xi(i)), p_prime);
        r.xi_p.push_back(std::pow(s, 1.0 / p_prime));
        sum += xi;
        r.xi.push_back(std::move(xi));
        prev = pi;
    }
    r.reconstruction_error = r.target.size() ? (r.target - sum).cwiseAbs().maxCoeff() : 0.0;
    return r;
}

double geom_series_bound(double A) {
    require(A > 0.0, "A must be positive");
    if (A >= 1.0) return 1.0;
    const double l = std::log(A);
    return A * (1.0 + l * l);
}

double geom_series_bruteforce(double A, int k_max) {
    require(A > 0.0, "A must be positive");
    require(k_max >= 60, "k_max must be >= 60");
    // terms with k + k' = s: s + 1 of them for s <= k_max, 2 k_max - s + 1 beyond
    double sum = 0.0;
    for (int s = 2 * k_max; s >= 0; --s) {
        const double count = s <= k_max ? s + 1 : 2 * k_max - s + 1;
        sum += count * std::min(std::ldexp(1.0, -s), A);
    }
    return sum;
}

}  // namespace slab
