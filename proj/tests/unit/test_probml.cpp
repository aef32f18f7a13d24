#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "spectral_lab/multipliers.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/probml.hpp"
#include "spectral_lab/rng.hpp"

using namespace slab;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

Eigen::MatrixXcd gaussian_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
    CounterRng rng(seed);
    Eigen::MatrixXcd S(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = rng.normal();
            S(i, j) = cplx(re, rng.normal());
        }
    return S;
}

double largest_row(const Eigen::MatrixXcd& S) {
    double r = 0.0;
    for (Eigen::Index i = 0; i < S.rows(); ++i) r = std::max(r, S.row(i).norm());
    return r;
}

}  // namespace

TEST_CASE("exceedance: constant statistic") {
    const double C = 2.0;
    const ExceedanceCurve c = exceedance_curve([C](std::uint64_t) { return C / 2; }, {1, 2, 4}, 200, C, 1);
    for (double p : c.probs) CHECK(p == 0.0);
    CHECK_FALSE(c.regularized);
    try {
        exceedance_curve([](std::uint64_t) { return 0.0; }, {1}, 99, 1.0, 1);
        FAIL("expected insufficient-samples");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_samples);
    }
}

TEST_CASE("exceedance: |Gaussian| against erfc") {
    const double C = std::sqrt(2.0 / kPi);
    const std::size_t n = 100000;
    const auto Ms = linspace(1.0, 3.0, 9);
    const Sampler s = [](std::uint64_t seed) { return std::abs(CounterRng(seed).normal()); };
    const ExceedanceCurve c = exceedance_curve(s, Ms, n, C, 0xA11CE, "abs_gaussian");
    for (std::size_t i = 0; i < Ms.size(); ++i) {
        const double p = std::erfc(Ms[i] * C / std::sqrt(2.0));
        CHECK(c.probs[i] >= 0.0);
        CHECK(c.probs[i] <= 1.0);
        CHECK(std::abs(c.raw[i] - p) <= 5.0 * std::sqrt(p * (1 - p) / n));
    }
    const TailFit f = fit_tail(c);
    CHECK(f.c > 0.0);
    CHECK(f.r2 >= 0.9);
    CHECK(f.points == 9);

    // bit-exact under a different schedule
    const unsigned saved = thread_count();
    set_thread_count(3);
    const ExceedanceCurve c3 = exceedance_curve(s, Ms, n, C, 0xA11CE, "abs_gaussian");
    set_thread_count(saved);
    CHECK(c3.raw == c.raw);

    const Table t = c.table("tail");
    CHECK(t.columns == std::vector<std::string>{"M", "M2", "raw", "prob", "censored"});
}

TEST_CASE("exceedance: censoring") {
    std::vector<double> samples(200, 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = static_cast<double>(i % 10);
    const ExceedanceCurve c = exceedance_from_samples(samples, {0.5, 4.5, 8.5, 9.5}, 1.0);
    CHECK(c.raw == std::vector<double>{0.9, 0.5, 0.1, 0.0});
    CHECK(c.censored == std::vector<bool>{false, false, false, true});
    CHECK(c.probs == c.raw);
    CHECK_FALSE(c.regularized);
    CHECK_THROWS_AS(exceedance_from_samples(samples, {2.0, 1.0}, 1.0), Error);
}

TEST_CASE("exceedance: extension norm of a unit-cell Bernoulli potential") {
    const BoxGrid g = make_grid(2, 16.0, 64);
    const GridFunction cell = sample(g, [](const Point& x) {
        return cplx(x[0] >= 0.0 && x[0] < 1.0 && x[1] >= 0.0 && x[1] < 1.0 ? 1.0 : 0.0);
    });
    const SphereNet net = sphere_net(1.0, 4.0, 2);
    const Sampler s = [&](std::uint64_t seed) {
        const RandomPotential rp = randomize(cell, {0.25, Distribution::bernoulli, seed});
        return spectral_norm(extension_sandwich(rp.realized, net, net));
    };
    const auto samples = draw_samples(s, 2000, 77);
    const std::vector<double> first(samples.begin(), samples.begin() + 1000);
    const double C = mean(first);
    const auto Ms = linspace(1.0, 4.0, 13);
    const ExceedanceCurve c1 = exceedance_from_samples(first, Ms, C);
    const ExceedanceCurve c2 = exceedance_from_samples(samples, Ms, C);
    for (std::size_t i = 1; i < Ms.size(); ++i) CHECK(c1.probs[i] <= c1.probs[i - 1]);
    CHECK(c1.probs.back() < 0.01);
    for (std::size_t i = 0; i < Ms.size(); ++i) CHECK(std::abs(c1.probs[i] - c2.probs[i]) < 0.02);
}

TEST_CASE("max_scaling") {
    const MaxScalingReport g = max_scaling({1, 10, 100, 1000, 10000}, Distribution::gaussian, 400, 3);
    CHECK(g.mean_max[0] == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(0.08));
    CHECK(std::isnan(g.ratio[0]));
    CHECK(g.ratio.back() == doctest::Approx(1.0).epsilon(0.1));
    CHECK(g.slope > 0.0);
    CHECK(std::isfinite(g.slope));
    const MaxScalingReport b = max_scaling({1, 10, 100}, Distribution::bernoulli, 50, 3);
    for (double v : b.mean_max) CHECK(v == 1.0);
    CHECK_THROWS_AS(max_scaling({10, 100}, Distribution::gaussian, 10, 3), Error);
}

TEST_CASE("probe_image and greedy cover") {
    const Eigen::MatrixXcd S = gaussian_matrix(30, 4, 8);
    const auto pts = probe_image(S, 500, 2);
    REQUIRE(pts.size() == 500);
    CHECK(pts[0].norm() == 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(linf_distance(pts[i], Eigen::VectorXcd::Zero(30)) <= largest_row(S) * (1 + 1e-12));
    const double eps = 0.5 * largest_row(S);
    const auto centers = greedy_centers(pts, eps);
    for (const auto& p : pts) {
        double best = INFINITY;
        for (std::size_t c : centers) best = std::min(best, linf_distance(p, pts[c]));
        CHECK(best <= eps);
    }
    for (std::size_t a = 0; a < centers.size(); ++a)
        for (std::size_t b = a + 1; b < centers.size(); ++b) CHECK(linf_distance(pts[centers[a]], pts[centers[b]]) > eps);
    CHECK(centers[0] == 0);
}

TEST_CASE("covering_number") {
    const Eigen::MatrixXcd S = gaussian_matrix(64, 8, 12);
    const double Sn = largest_row(S);
    CHECK(covering_number(S, Sn, 10000, 1) == 1);
    CHECK(covering_number(Eigen::MatrixXcd::Zero(64, 8), 1e-6, 10000, 1) == 1);
    const CoveringReport r = covering_sweep(S, {0.5 * Sn, 0.25 * Sn, Sn, 0.125 * Sn}, 10000, 4);
    CHECK(r.eps_list == std::vector<double>{0.125 * Sn, 0.25 * Sn, 0.5 * Sn, Sn});
    CHECK(r.S_norm == doctest::Approx(Sn).epsilon(1e-14));
    for (std::size_t i = 1; i < r.N_eps.size(); ++i) CHECK(r.N_eps[i] <= r.N_eps[i - 1]);
    CHECK(r.N_eps.back() == 1);
    const auto ratio = r.sudakov_ratio();
    for (std::size_t i = 0; i < ratio.size(); ++i)
        CHECK(ratio[i] == doctest::Approx(std::log(static_cast<double>(r.N_eps[i])) * r.eps_list[i] * r.eps_list[i] /
                                          (std::log(64.0) * Sn * Sn)));
    CHECK_THROWS_AS(covering_number(S, 0.1, 9999, 1), Error);
    CHECK_THROWS_AS(covering_number(gaussian_matrix(8, 65, 1), 0.1, 10000, 1), Error);
}

TEST_CASE("chaining_decompose") {
    const Eigen::MatrixXcd S = gaussian_matrix(40, 3, 21) / 4.0;
    SUBCASE("target already a centre at every level") {
        Eigen::VectorXcd a(3);
        a << 1.0, cplx(0.0, 1.0), -1.0;
        a.normalize();
        NetHierarchy nets;
        for (int k = 0; k <= 4; ++k) {
            nets.radii.push_back(std::ldexp(1.0, -k));
            nets.centers.push_back({S * a});
        }
        const ChainResult c = chaining_decompose(S, a, nets, 1.0 / 16.0);
        CHECK((c.xi[0] - S * a).norm() == 0.0);
        for (std::size_t k = 1; k < c.xi.size(); ++k) CHECK(c.xi[k].norm() == 0.0);
        CHECK(c.reconstruction_error == 0.0);
    }
    SUBCASE("telescoping remainder bound") {
        const int k_max = 6;
        const auto image = probe_image(S, 20000, 5);
        const NetHierarchy nets = build_nets(image, k_max);
        CHECK(nets.radii.size() == k_max + 1);
        const double tol = std::ldexp(1.0, -k_max + 1);
        CounterRng rng(31);
        for (int t = 0; t < 5; ++t) {
            Eigen::VectorXcd a(3);
            for (auto& v : a) {
                const double re = rng.normal();
                v = cplx(re, rng.normal());
            }
            a.normalize();
            const ChainResult c = chaining_decompose(S, a, nets, tol);
            Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(40);
            for (const auto& x : c.xi) sum += x;
            CHECK(linf_distance(sum, S * a) <= tol);
            CHECK(c.reconstruction_error == doctest::Approx(linf_distance(S * a, sum)).epsilon(1e-12));
            for (std::size_t k = 0; k < c.xi.size(); ++k) {
                CHECK(c.xi_inf[k] == doctest::Approx(linf_distance(c.xi[k], Eigen::VectorXcd::Zero(40))));
                // pi_k lies within 2^{-k} of S a, so consecutive differences obey
                // 2^{-k} + 2^{-k+1}
                if (k > 0) CHECK(c.xi_inf[k] <= 3.0 * std::ldexp(1.0, -static_cast<int>(k)) * (1 + 1e-12));
            }
        }
        try {
            chaining_decompose(S, Eigen::VectorXcd::Unit(3, 0), nets, 1e-3);
            FAIL("expected net-too-coarse");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::net_too_coarse);
        }
    }
}

TEST_CASE("geometric series bound") {
    CHECK(geom_series_bound(2.0) == 1.0);
    CHECK(geom_series_bound(1.0) == 1.0);
    CHECK(std::abs(geom_series_bruteforce(2.0) - 4.0) < std::ldexp(1.0, -78));
    CHECK(std::abs(geom_series_bruteforce(1.0) - 4.0) < std::ldexp(1.0, -78));
    const double A = 0.25;
    CHECK(geom_series_bound(A) == doctest::Approx(A * (1 + std::log(A) * std::log(A))));
    // direct double sum, written out
    double brute = 0.0;
    for (int k = 0; k <= 80; ++k)
        for (int kk = 0; kk <= 80; ++kk) brute += std::min(std::ldexp(1.0, -k - kk), A);
    CHECK(geom_series_bruteforce(A) == doctest::Approx(brute).epsilon(1e-14));
    double lo = INFINITY, hi = 0.0;
    for (int j = 2; j <= 20; ++j) {
        const double a = std::ldexp(1.0, -j);
        const double r = geom_series_bruteforce(a) / (a * j * j * std::log(2.0) * std::log(2.0));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    // the ratio falls from 5.7 at A = 1/4 towards 1
    CHECK(lo >= 1.0);
    CHECK(hi <= 6.0);
    CHECK_THROWS_AS(geom_series_bound(0.0), Error);
    CHECK_THROWS_AS(geom_series_bruteforce(0.5, 59), Error);
}
