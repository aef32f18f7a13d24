#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_lab/potentials.hpp"
#include "spectral_lab/stats.hpp"

namespace slab {

// A statistic of one random sample, driven only by its seed.
using Sampler = std::function<double(std::uint64_t sample_seed)>;

// Sample i uses derive_seed(master, i); evaluation is parallel, the
// returned order is the index order.
std::vector<double> draw_samples(const Sampler& sampler, std::size_t n, std::uint64_t master);

// Frequencies below kCensorCount / n are flagged censored.
inline constexpr double kCensorCount = 5.0;

struct ExceedanceCurve {
    std::string statistic;
    std::vector<double> Ms;
    std::vector<double> raw;    // empirical P(X > M C)
    std::vector<double> probs;  // running minimum of raw over increasing M
    std::vector<bool> censored;
    std::size_t n_samples = 0;
    double C = 1.0;
    bool regularized = false;  // true when probs differs from raw
    Table table(const std::string& name) const;
};

ExceedanceCurve exceedance_from_samples(const std::vector<double>& samples, const std::vector<double>& Ms, double C,
                                        const std::string& statistic = "statistic");
ExceedanceCurve exceedance_curve(const Sampler& sampler, const std::vector<double>& Ms, std::size_t n_samples,
                                 double C, std::uint64_t master, const std::string& statistic = "statistic");

// log P = intercept - c M^2 on uncensored points with P > 0.
struct TailFit {
    double c = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
    ScalingFit fit;
};
TailFit fit_tail(const ExceedanceCurve& curve);

struct MaxScalingReport {
    std::vector<std::size_t> Ns;
    std::vector<double> mean_max;    // E max_{j<=N} |X_j|
    std::vector<double> ratio;       // mean_max / sqrt(2 log N), NaN at N = 1
    double slope = 0.0;              // of mean_max against sqrt(log N)
    double intercept = 0.0;
    double r2 = 0.0;
    Table table(const std::string& name) const;
};
MaxScalingReport max_scaling(const std::vector<std::size_t>& Ns, Distribution dist, std::size_t n_trials,
                             std::uint64_t seed);

// Image points S x of unit vectors x of C^cols. The origin comes first, then
// n_probe - 1 uniform points of the unit sphere.
std::vector<Eigen::VectorXcd> probe_image(const Eigen::MatrixXcd& S, std::size_t n_probe, std::uint64_t seed);
double linf_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
// Greedy cover in l^inf with centres taken from the points, in order.
std::vector<std::size_t> greedy_centers(const std::vector<Eigen::VectorXcd>& pts, double eps);
std::size_t covering_number(const Eigen::MatrixXcd& S, double eps, std::size_t n_probe, std::uint64_t seed);

struct CoveringReport {
    std::vector<double> eps_list;  // ascending
    std::vector<std::size_t> raw;
    std::vector<std::size_t> N_eps;  // running minimum, non-increasing in eps
    double S_norm = 0.0;             // ||S||_{l2 -> l_inf}: largest row norm
    std::size_t m = 0;
    std::size_t n_probe = 0;
    // log N(eps) eps^2 / (log m ||S||^2)
    std::vector<double> sudakov_ratio() const;
};
CoveringReport covering_sweep(const Eigen::MatrixXcd& S, std::vector<double> eps_list, std::size_t n_probe,
                              std::uint64_t seed);

// Nets of the probe image at radii 2^{-k}, k = 0..k_max.
struct NetHierarchy {
    std::vector<double> radii;
    std::vector<std::vector<Eigen::VectorXcd>> centers;
};
NetHierarchy build_nets(const std::vector<Eigen::VectorXcd>& image, int k_max);

struct ChainResult {
    Eigen::VectorXcd target;            // S a
    std::vector<Eigen::VectorXcd> xi;   // xi^(0..k_max)
    std::vector<double> xi_inf;         // ||xi^(k)||_inf
    std::vector<double> xi_p;           // ||xi^(k)||_{p'}
    double reconstruction_error = 0.0;  // ||S a - sum_k xi^(k)||_inf
    std::size_t fallbacks = 0;          // levels where S a joined the net
};
// pi_k = nearest centre of net k to S a, or S a itself when farther than the
// radius; xi^(0) = pi_0, xi^(k) = pi_k - pi_{k-1}. Throws net-too-coarse if
// the finest radius exceeds tol.
ChainResult chaining_decompose(const Eigen::MatrixXcd& S, const Eigen::VectorXcd& a, const NetHierarchy& nets,
                               double tol, double p_prime = 6.0);

// A (1 + (log A)^2) for A < 1, else 1.
double geom_series_bound(double A);
// sum_{0 <= k, k' <= k_max} min(2^{-k-k'}, A)
double geom_series_bruteforce(double A, int k_max = 80);

}  // namespace slab
