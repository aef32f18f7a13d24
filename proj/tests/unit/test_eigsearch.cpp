#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "spectral_lab/eigsearch.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/potentials.hpp"
#include "spectral_lab/rng.hpp"

using namespace slab;

namespace {

// Even ground state of -u'' - c 1_[0,1) u = E u: with k^2 = c + E and
// kappa^2 = -E, k sin(k/2) = kappa cos(k/2). Plain bisection.
double well_oracle(double c) {
    auto f = [c](double k) { return k * std::sin(k / 2) - std::sqrt(c - k * k) * std::cos(k / 2); };
    double lo = 1e-9, hi = std::min(std::sqrt(c), kPi);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double k = 0.5 * (lo + hi);
    return k * k - c;
}

GridFunction well(const BoxGrid& g, double c) {
    return sample(g, [c](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? cplx(-c) : cplx(0.0); });
}

double lowest(const SpectralScan& s) {
    double best = NAN;
    for (const auto& c : s.candidates)
        if (std::isnan(best) || c.z.real() < best) best = c.z.real();
    return best;
}

double scan_min(const SpectralScan& s) { return *std::min_element(s.sigma_min.begin(), s.sigma_min.end()); }

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::io;  // nothing thrown
}

}  // namespace

TEST_CASE("ScanRegion coordinates") {
    const ScanRegion z{false, -2.0, -1.0, 0.1, 0.5, 5, 3};
    CHECK(z.node(0, 0) == cplx(-2.0, 0.1));
    CHECK(z.node(4, 2) == cplx(-1.0, 0.5));
    const ScanRegion le{true, 0.5, 1.5, 0.05, 0.15, 3, 3};
    CHECK(le.node(1, 1) == cplx(1.0, 0.1) * cplx(1.0, 0.1));
}

TEST_CASE("zero potential scans to exactly 1") {
    const BoxGrid g = make_grid(1, 8.0, 64);
    const SpectralScan s = sigma_min_scan(GridFunction(g), {false, -2.0, -1.0, 0.1, 0.5, 5, 4});
    for (double v : s.sigma_min) CHECK(v == 1.0);
    CHECK(s.candidates.empty());
    const BoxGrid g2 = make_grid(2, 8.0, 16);
    const SpectralScan s2 = sigma_min_scan(GridFunction(g2), {true, 0.8, 1.2, 0.01, 0.1, 3, 3});
    for (double v : s2.sigma_min) CHECK(v == 1.0);
}

TEST_CASE("region errors") {
    const BoxGrid g = make_grid(1, 8.0, 64);
    const GridFunction V = well(g, 4.0);
    CHECK(code_of([&] { sigma_min_scan(V, {false, -1.0, 1.0, -0.1, 0.1, 5, 5}); }) == Errc::region_touches_axis);
    CHECK(code_of([&] { sigma_min_scan(V, {true, 0.5, 1.5, -0.1, 0.1, 5, 5}); }) == Errc::region_touches_axis);
    CHECK(code_of([&] { sigma_min_scan(V, {false, -2.0, -1.0, 0.1, 0.5, 2, 5}); }) == Errc::precondition);
    // below the axis on the negative half line is fine
    CHECK_NOTHROW(sigma_min_scan(V, {false, -3.0, -1.0, -0.2, 0.2, 5, 5}));
}

TEST_CASE("square well ground state against the transcendental equation") {
    const double c = 10.0;
    const double oracle = well_oracle(c);
    CHECK(oracle == doctest::Approx(-6.4902).epsilon(1e-4));
    const ScanRegion region{false, -9.9, -0.1, -0.3, 0.3, 99, 7};
    const SpectralScan s = sigma_min_scan(well(make_grid(1, 8.0, 512), c), region, KernelRoute::continuum);
    REQUIRE_FALSE(s.candidates.empty());
    for (const auto& cand : s.candidates) {
        CHECK(cand.sigma_min < kCandidateThreshold);
        CHECK(cand.x > region.x0);
        CHECK(cand.x < region.x1);
        CHECK(cand.y > region.y0);
        CHECK(cand.y < region.y1);
    }
    const double E = lowest(s);
    CHECK(std::abs(E - oracle) <= 0.02 * std::abs(oracle));
    const SpectralScan s2 = sigma_min_scan(well(make_grid(1, 8.0, 1024), c), region, KernelRoute::continuum);
    CHECK(std::abs(lowest(s2) - E) < 0.05 * std::abs(E));

    const Table t = s.table();
    CHECK(t.columns == std::vector<std::string>{"re_z", "im_z", "sigma_min"});
    CHECK(t.rows.size() == 99u * 7u);
    const auto js = nlohmann::json::parse(s.candidates_json());
    CHECK(js.size() == s.candidates.size());
    CHECK(js[0]["sigma_min"].get<double>() == s.candidates[0].sigma_min);
}

TEST_CASE("supp-V block and the full system are singular together") {
    // The block is the Schur complement of I + R0 V: equal determinants.
    const BoxGrid g = make_grid(2, 8.0, 16);
    GridFunction V(g);
    for (std::size_t i = 100; i < 110; ++i) V[i] = cplx(1.0, 0.5) * (static_cast<double>(i) - 99.0) * 0.3;
    for (const cplx z : {cplx(-1.0, 0.3), cplx(0.8, 0.2), cplx(2.0, 0.05)}) {
        const cplx dF = periodic_resolvent_matrix(V, z, true).determinant();
        const cplx dB = periodic_resolvent_matrix(V, z, false).determinant();
        CHECK(std::abs(dF - dB) <= 1e-8 * std::abs(dB));
        CHECK(sigma_min_at(V, z) == doctest::Approx(smallest_singular_value(periodic_resolvent_matrix(V, z, false))));
    }
}

TEST_CASE("imaginary tube at eps = 1/4: grid refinement drift") {
    const double eps = 0.25;
    const ScanRegion region{true, 0.75, 1.25, eps / 4, 2 * eps, 7, 5};
    auto tube = [&](int N) {
        GridFunction V = tube_potential(eps, make_grid(2, 16.0, N));
        for (auto& v : V.values) v *= cplx(0.0, 1.0);
        return V;
    };
    const double coarse = scan_min(sigma_min_scan(tube(32), region));
    const double fine = scan_min(sigma_min_scan(tube(64), region));
    MESSAGE("tube sigma_min landscape minimum: " << coarse << " -> " << fine);
    CHECK(std::abs(fine - coarse) <= 0.10 * coarse);
}

TEST_CASE("thm1_bound") {
    CHECK(thm1_bound(1.0, 0.0, 1e-300, 2.0, 2.0, 2) == doctest::Approx(1.0 / (2.0 * std::pow(std::log(4.0), 3.5))).epsilon(1e-15));
    // co-scaling h and R keeps the brackets fixed
    for (int d = 1; d <= 3; ++d) {
        const double q = d + 1.0;
        const double a = thm1_bound(1.0, 0.05, 0.3, 5.0, q, d), b = thm1_bound(2.0, 0.1, 0.15, 2.5, q, d);
        CHECK(b / a == doctest::Approx(std::pow(2.0, 2.0 - d / q)).epsilon(1e-14));
    }
    CHECK(code_of([] { thm1_bound(1.0, 0.2, 0.1, 1.0, 2.0, 2); }) == Errc::precondition);
    CHECK(code_of([] { thm1_bound(1.0, 0.0, 2.0, 1.0, 2.0, 2); }) == Errc::precondition);
    CHECK(code_of([] { thm1_bound(1.0, 0.0, 0.1, 1.0, 3.5, 2); }) == Errc::precondition);
}

TEST_CASE("bound formulas against direct substitution on random tuples") {
    CounterRng rng(0xB0B);
    for (int t = 0; t < 10; ++t) {
        const int d = 1 + static_cast<int>(rng.uniform() * 3.0);
        const double lambda = 0.05 + 5.0 * rng.uniform();
        const double eps = (rng.uniform() - 0.5) * lambda / 5.0;
        const double h = 0.01 + 3.0 * rng.uniform();
        const double R = h * (1.0 + 10.0 * rng.uniform());
        const double q = 1.0 + (d - 1e-3) * rng.uniform();
        const double delta = 0.1 + rng.uniform();
        const double lead = std::pow(lambda, 2.0 - d / q);
        const double e1 = lead / (std::pow(2.0 + lambda * h, d / 2.0) * std::pow(std::log(2.0 + lambda * R), 3.5));
        const double e23 = lead / (std::pow(2.0 + lambda * h, d / 2.0) * std::pow(std::log(2.0 + lambda * h), 2.0));
        CHECK(thm1_bound(lambda, eps, h, R, q, d) == e1);
        CHECK(thm2_bound(lambda, eps, h, q, d, delta) == e23);
        CHECK(thm3_bound(lambda, eps, h, q, d) == e23);
    }
}

TEST_CASE("thm2 weighted norm") {
    const BoxGrid g = make_grid(2, 16.0, 64);
    const GridFunction V = sample(g, [](const Point& x) { return norm(x, 2) < 1.0 ? cplx(1.0, -0.5) : cplx(0.0); });
    for (double q : {1.5, 3.0}) {
        const double n = lp_norm(V, q);
        CHECK(weighted_lq_norm(V, 1.0, 0.7, q) <= std::pow(3.0, 0.7) * n);
        CHECK(weighted_lq_norm(V, 1.0, 1e-12, q) == doctest::Approx(n).epsilon(1e-10));
    }
    const BoundReport r = thm2_report(V, 1.0, 0.05, 0.5, 2.0, 0.5);
    CHECK(r.rhs_norm == weighted_lq_norm(V, 1.0, 0.5, 2.0));
    CHECK(r.lhs == thm2_bound(1.0, 0.05, 0.5, 2.0, 2, 0.5));

    // shells |x| < 1 and [2^{k-1}, 2^k) of a decaying potential
    const BoxGrid G = make_grid(2, 128.0, 256);
    const GridFunction W = sample(G, [](const Point& x) { return cplx(std::pow(bracket(norm(x, 2)), -1.5)); });
    const double delta = 0.5, q = 3.0;
    const double weighted = weighted_lq_norm(W, 1.0, delta, q);
    for (int k = 0; k <= 5; ++k) {
        GridFunction Vk(G);
        for (std::size_t i = 0; i < G.size(); ++i) {
            const double r = norm(position(G, i), 2);
            const bool in = k == 0 ? r < 1.0 : (r >= std::ldexp(1.0, k - 1) && r < std::ldexp(1.0, k));
            if (in) Vk[i] = W[i];
        }
        CHECK(lp_norm(Vk, q) <= std::pow(2.0, -delta * k) * weighted);
    }
}

TEST_CASE("thm3_bound") {
    CHECK(thm3_bound(1.3, 0.1, 0.4, 1.5, 2) == thm2_bound(1.3, 0.1, 0.4, 1.5, 2, 0.3));
    for (int d = 1; d <= 3; ++d)
        CHECK(thm3_bound(1.0, 0.0, 1e-300, 1.5, d) ==
              doctest::Approx(1.0 / (std::pow(2.0, d / 2.0) * std::pow(std::log(2.0), 2.0))).epsilon(1e-15));
    CHECK(code_of([] { thm3_bound(1.0, 0.0, 0.5, 3.0, 2); }) == Errc::endpoint_q);
    const BoxGrid g = make_grid(1, 8.0, 64);
    const GridFunction V = well(g, 2.0);
    CHECK(thm3_report(V, 1.0, 0.0, 0.5, 1.5, true).rhs_norm == lorentz_weak_norm(V, 1.5));
    CHECK(thm3_report(V, 1.0, 0.0, 0.5, 1.5).rhs_norm == lp_norm(V, 1.5));
}

TEST_CASE("BoundReport violation threshold") {
    const BoxGrid g = make_grid(1, 8.0, 64);
    const BoundReport r = thm1_report(well(g, 3.0), 1.0, 0.05, 0.25, 1.0, 1.5);
    const double M0 = r.violation_threshold();
    CHECK(M0 == r.lhs / r.rhs_norm);
    CHECK(r.violated_at(0.5 * M0));
    CHECK_FALSE(r.violated_at(2.0 * M0));
}

TEST_CASE("corollary_ratio") {
    const BoxGrid g = make_grid(1, 8.0, 64);
    const GridFunction V = well(g, 2.0);
    CHECK(corollary_ratio({}, V, 1.5) == 0.0);
    const double nq = std::pow(lp_norm(V, 1.5), 1.5);
    const cplx unit = cplx(1.0, 0.05) * cplx(1.0, 0.05) / std::abs(cplx(1.0, 0.05) * cplx(1.0, 0.05));
    CHECK(corollary_ratio({unit}, V, 1.5) == doctest::Approx(1.0 / nq).epsilon(1e-14));
    const std::vector<cplx> a{cplx(4.0, 0.3), cplx(1.0, 0.1), cplx(0.25, -0.01)};
    const std::vector<cplx> b{a[2], a[0], a[1]};
    CHECK(corollary_ratio(a, V, 1.5) == corollary_ratio(b, V, 1.5));
    CHECK_THROWS_AS(corollary_ratio({cplx(0.0, 1.0)}, V, 1.5), Error);
}

TEST_CASE("destruction_scale") {
    // eps = 1/e: (e^{-1})^{3/6 - 1} (log e)^{-7/2} = e^{1/2}
    CHECK(destruction_scale(std::exp(-1.0), 3.0, 2) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
    // log h = (2/d)[a log eps - 3.5 log log(1/eps)], a = (d+1)/(2q) - 1, is
    // stationary at log(1/eps) = 3.5/|a|: decreasing below, increasing above.
    const double a = 3.0 / 6.0 - 1.0;
    const double turn = std::exp(-3.5 / std::abs(a));
    double prev = destruction_scale(1e-8 * turn, 3.0, 2);
    for (double t = 1.1e-8; t < 0.99; t *= 1.1) {
        const double h = destruction_scale(t * turn, 3.0, 2);
        CHECK(h < prev);
        prev = h;
    }
    for (double e = 1.01 * turn; e < std::exp(-1.0); e *= 1.1) CHECK(destruction_scale(e, 3.0, 2) > destruction_scale(e / 1.01, 3.0, 2));
    const double eps = 0.01;
    CHECK(destruction_scale(eps, 1.5 + 1e-12, 2) == doctest::Approx(std::pow(std::log(1.0 / eps), -3.5)).epsilon(1e-9));
    CHECK(code_of([] { destruction_scale(0.1, 1.5, 2); }) == Errc::q_out_of_range);
    CHECK(code_of([] { destruction_scale(0.1, 3.5, 2); }) == Errc::q_out_of_range);
    CHECK(code_of([] { destruction_scale(0.6, 3.0, 2); }) == Errc::precondition);
}
