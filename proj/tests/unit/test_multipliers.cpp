#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "spectral_lab/multipliers.hpp"
#include "spectral_lab/rng.hpp"

using namespace slab;

namespace {

double r2pi(const BoxGrid& g, std::size_t i) { return kTwoPi * norm(frequency(g, i), g.d); }

std::size_t mirror(const BoxGrid& g, std::size_t i) {
    Index3 k = unflatten(g, i);
    for (int a = 0; a < g.d; ++a) k[a] = (g.N - k[a]) % g.N;
    return flatten(g, k);
}

double sup_abs(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("ComplexEnergy") {
    const ComplexEnergy e = ComplexEnergy::make(2.0, -0.15);
    CHECK(e.z() == cplx(2.0, -0.15) * cplx(2.0, -0.15));
    CHECK_THROWS_AS(ComplexEnergy::make(1.0, 0.2), Error);
    CHECK_THROWS_AS(ComplexEnergy::make(-1.0, 0.0), Error);
}

TEST_CASE("resolvent_symbol") {
    const BoxGrid g = make_grid(2, 16.0, 64);
    const ComplexEnergy e = ComplexEnergy::make(1.0, 0.1);
    const MultiplierSpec m = resolvent_symbol(e, g);
    const std::size_t zero = flatten(g, {32, 32, 0});
    CHECK(std::abs(m.symbol[zero] + 1.0 / (cplx(1.0, 0.1) * cplx(1.0, 0.1))) < 1e-15);
    for (std::size_t i = 0; i < m.symbol.size(); ++i) {
        const std::size_t j = mirror(g, i);
        if (norm(frequency(g, j), 2) == norm(frequency(g, i), 2)) CHECK(m.symbol[i] == m.symbol[j]);
    }
    // near the sphere |m| ~ 1/(2 lambda |eps|)
    const ComplexEnergy small = ComplexEnergy::make(1.0, 0.01);
    const BoxGrid g1 = make_grid(1, 1.0 / (1.0 / kTwoPi), 64);  // dxi = 1/(2 pi): lattice hits r = 1
    const MultiplierSpec ms = resolvent_symbol(small, g1);
    const std::size_t at1 = flatten(g1, {33, 0, 0});
    CHECK(r2pi(g1, at1) == doctest::Approx(1.0));
    CHECK(std::abs(ms.symbol[at1]) * 2.0 * 0.01 == doctest::Approx(1.0).epsilon(0.01));
    try {
        resolvent_symbol(cplx(1.0, 0.0), g);
        FAIL("expected singular-symbol");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::singular_symbol);
    }
    CHECK_NOTHROW(resolvent_symbol(cplx(1.0, 0.0), g, 0.05));
}

TEST_CASE("lowhigh_split") {
    const BoxGrid g = make_grid(2, 16.0, 64);
    const MultiplierSpec m = resolvent_symbol(ComplexEnergy::make(1.0, 0.1), g);
    const auto [low, high] = lowhigh_split(m);
    double C = 0.0;
    for (std::size_t i = 0; i < m.symbol.size(); ++i) {
        CHECK(low.symbol[i] + high.symbol[i] == m.symbol[i]);
        const double r = r2pi(g, i);
        if (r >= 2.0) CHECK(low.symbol[i] == 0.0);
        if (r <= 1.5) CHECK(high.symbol[i] == 0.0);
        C = std::max(C, std::abs(high.symbol[i]) * (1.0 + r * r));
    }
    CHECK(C <= 4.0);
}

TEST_CASE("smooth_symbol: R law, bounded symbol, identity") {
    const BoxGrid g = make_grid(2, 256.0, 256);
    std::vector<double> Rs = {8, 16, 32, 64}, sups;
    for (double R : Rs) sups.push_back(sup_abs(smoothed_boundary_resolvent(1.0, R, g).symbol));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < Rs.size(); ++i) {
        const double x = std::log(Rs[i]), y = std::log(sups[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(std::abs(slope - 1.0) <= 0.15);

    const MultiplierSpec bounded = resolvent_symbol(cplx(1.0, 0.5) * cplx(1.0, 0.5), g);
    const double before = sup_abs(bounded.symbol), after = sup_abs(smooth_symbol(bounded, 8).symbol);
    CHECK(std::abs(after - before) / before <= 0.1);
    CHECK_THROWS_AS(smooth_symbol(bounded, 100), Error);  // 2R > L/2
}

TEST_CASE("cdelta_sqrt invariant") {
    const BoxGrid g = make_grid(2, 256.0, 256);
    double K = 0.0;
    for (double delta : {1.0, 0.125, 1.0 / 64}) {
        const MultiplierSpec c = cdelta_sqrt(smoothed_boundary_resolvent(1.0, 1.0 / delta, g), delta);
        // independent pointwise scan
        for (std::size_t i = 0; i < c.symbol.size(); ++i) {
            const double r = r2pi(g, i);
            K = std::max(K, std::abs(c.symbol[i]) * std::sqrt(std::abs(r * r - 1.0) + delta));
            if (std::abs(r - 1.0) >= kSphereBand) CHECK(c.symbol[i] == 0.0);
        }
        CHECK(cdelta_constant(c) <= K);
    }
    CHECK(K <= 4.0);
    // zero symbol -> zero
    MultiplierSpec zero;
    zero.symbol = GridFunction(g, Space::frequency);
    zero.smoothing_scale = 1.0;
    CHECK(sup_abs(cdelta_sqrt(zero, 1.0).symbol) == 0.0);
    // delta = 1, |2 pi xi| = sqrt 2 bound (|2 - 1| + 1)^{-1/2} <= 1
    CHECK(std::pow(std::abs(2.0 - 1.0) + 1.0, -0.5) <= 1.0);
    CHECK_THROWS_AS(cdelta_sqrt(smoothed_boundary_resolvent(1.0, 8, g), 1.0), Error);
}

TEST_CASE("make_phi") {
    const BoxGrid g = make_grid(2, 32.0, 512);
    const double R = 2.0;
    const MultiplierSpec phi = make_phi(R, g);
    for (std::size_t i = 0; i < phi.symbol.size(); ++i) {
        const double r = norm(frequency(g, i), 2);
        CHECK(phi.symbol[i].real() >= 0.0);
        CHECK(std::abs(phi.symbol[i].imag()) <= 1e-12);
        if (r <= R) CHECK(phi.symbol[i].real() >= 1.0 - 1e-12);
        CHECK(phi.symbol[i] == phi.symbol[mirror(g, i)]);
    }
    const GridFunction kernel = fft_inverse(phi.symbol);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        if (norm(position(g, i), 2) > 1.0 / R) CHECK(std::abs(kernel[i]) <= 1e-10);
}

TEST_CASE("sphere_net") {
    const SphereNet n2 = sphere_net(1.0, 16, 2);
    CHECK(n2.size() >= 90);
    CHECK(n2.size() <= 110);
    CHECK(n2.total_weight() == doctest::Approx(kTwoPi).epsilon(0.01));
    CHECK(min_node_distance(n2) >= 1.0 / 16 - 1e-12);
    const SphereNet n3 = sphere_net(1.0, 8, 3);
    CHECK(n3.total_weight() == doctest::Approx(4.0 * kPi).epsilon(0.01));
    double brute = INFINITY;
    for (std::size_t a = 0; a < n3.size(); ++a)
        for (std::size_t b = a + 1; b < n3.size(); ++b) brute = std::min(brute, dist(n3.nodes[a], n3.nodes[b], 3));
    CHECK(brute >= 1.0 / 8 - 1e-12);
    CHECK(min_node_distance(n3) == doctest::Approx(brute));
}

TEST_CASE("extension_apply") {
    const BoxGrid g = make_grid(2, 16.0, 64);
    const SphereNet net = sphere_net(1.0, 32, 2);
    const GridFunction E = extension_apply(net, std::vector<cplx>(net.size(), 1.0), g);
    for (std::size_t i = 0; i < E.size(); ++i) {
        const double r = norm(position(g, i), 2);
        if (r > 4.0) continue;
        const double exact = kTwoPi * std::cyl_bessel_j(0.0, kTwoPi * r);
        CHECK(std::abs(E[i] - exact) <= 0.02 * kTwoPi);
    }
    CHECK(std::abs(E[flatten(g, {32, 32, 0})] - kTwoPi) <= 0.01 * kTwoPi);
    CHECK(sup_abs(extension_apply(net, std::vector<cplx>(net.size(), 0.0), g)) == 0.0);
    CounterRng rng(3);
    std::vector<cplx> a(net.size()), b(net.size()), ab(net.size());
    const cplx ca(0.3, -1.0), cb(2.0, 0.5);
    for (std::size_t k = 0; k < net.size(); ++k) {
        a[k] = cplx(rng.normal(), rng.normal());
        b[k] = cplx(rng.normal(), rng.normal());
        ab[k] = ca * a[k] + cb * b[k];
    }
    const GridFunction Ea = extension_apply(net, a, g), Eb = extension_apply(net, b, g), Eab = extension_apply(net, ab, g);
    double err = 0.0, scale = sup_abs(Eab);
    for (std::size_t i = 0; i < Eab.size(); ++i) err = std::max(err, std::abs(Eab[i] - ca * Ea[i] - cb * Eb[i]));
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("discres_matrix") {
    const SphereNet one{2, 1.0, 1.0, {{0.6, 0.8, 0.0}}, {1.0}};
    const SeparatedSet t{2, {{3.0, -2.0, 0.0}}, 1.0};
    const Eigen::MatrixXcd S1 = discres_matrix(one, t);
    CHECK(S1.rows() == 1);
    CHECK(S1.cols() == 1);
    CHECK(std::abs(S1(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(S1(0, 0) - e2pi(0.6 * 3.0 - 0.8 * 2.0)) < 1e-14);
    // l2_av -> l_inf norm (largest row norm / sqrt n) is exactly 1 for every R
    for (double R : {8.0, 16.0, 32.0, 64.0}) {
        const SphereNet net = sphere_net(0.45, R, 2);
        const Eigen::MatrixXcd S = discres_matrix(net, lattice_ball(2, R));
        CHECK(S.rowwise().norm().maxCoeff() / std::sqrt(double(net.size())) == doctest::Approx(1.0));
    }
}

TEST_CASE("knapp_datum is L2-normalized") {
    for (double R : {8.0, 32.0}) {
        const SphereNet net = sphere_net(1.0, 2 * R, 2);
        const auto g = knapp_datum(net, R);
        double s = 0.0;
        for (std::size_t k = 0; k < net.size(); ++k) s += net.weights[k] * std::norm(g[k]);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}
