#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spectral_lab/kernels.hpp"

using namespace slab;

namespace {

// Midpoint rule over the centred cube [-dx/2, dx/2]^d with n (even) points
// per axis, so no node sits on the singularity.
template <class F>
cplx cell_mean(int d, double dx, int n, F f) {
    cplx s = 0.0;
    const double h = dx / n;
    const int nz = d == 3 ? n : 1, ny = d >= 2 ? n : 1;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < ny; ++b)
            for (int c = 0; c < nz; ++c) {
                const double x = -dx / 2 + (a + 0.5) * h;
                const double y = d >= 2 ? -dx / 2 + (b + 0.5) * h : 0.0;
                const double z = d == 3 ? -dx / 2 + (c + 0.5) * h : 0.0;
                s += f(std::sqrt(x * x + y * y + z * z));
            }
    return s / (static_cast<double>(n) * ny * nz);
}

// Second difference residual of -G'' - (d-1)/r G' - k^2 G at radius r.
cplx helmholtz_residual(int d, cplx k, double r) {
    const double h = 1e-3;
    const cplx gm = green_function(d, k, r - h), g0 = green_function(d, k, r), gp = green_function(d, k, r + h);
    const cplx d2 = (gp - 2.0 * g0 + gm) / (h * h), d1 = (gp - gm) / (2 * h);
    return -d2 - (d - 1.0) / r * d1 - k * k * g0;
}

}  // namespace

TEST_CASE("green_function solves the radial Helmholtz equation") {
    for (int d : {1, 3}) {
        for (const cplx k : {cplx(1.0, 0.0), cplx(2.0, 0.3)})
            for (double r : {0.7, 2.0, 5.0}) CHECK(std::abs(helmholtz_residual(d, k, r)) < 1e-5 * std::abs(green_function(d, k, r)) * std::norm(k) + 1e-7);
    }
    for (double r : {0.7, 2.0, 5.0}) CHECK(std::abs(helmholtz_residual(2, 1.5, r)) < 1e-5);
    // unit jump of -G' across the origin in d=1
    const cplx k(1.3, 0.2);
    const double h = 1e-6;
    const cplx slope = (green_function(1, k, h) - green_function(1, k, 0.0)) / h;
    CHECK(std::abs(2.0 * slope + 1.0) < 1e-5);
}

TEST_CASE("green_function values") {
    CHECK(std::abs(green_function(3, 1.0, 2.0)) == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-15));
    // large-argument Hankel asymptotics: H0(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)} (1 - i/(8x) - 9/(128x^2))
    const double x = 60.0;
    const cplx i(0.0, 1.0);
    const cplx asym = 0.25 * i * std::sqrt(2.0 / (kPi * x)) * std::exp(i * (x - kPi / 4)) * (1.0 - i / (8.0 * x) - 9.0 / (128.0 * x * x));
    CHECK(std::abs(green_function(2, 1.0, x) - asym) < 1e-5 * std::abs(asym));
    // small-r: (i/4)H0(kr) + log(r)/(2 pi) -> i/4 - (log(k/2) + gamma)/(2 pi)
    const double r = 1e-6;
    const cplx near = green_function(2, 2.0, r) + std::log(r) / kTwoPi;
    CHECK(std::abs(near - cplx(-0.5772156649015329 / kTwoPi, 0.25)) < 1e-9);
    CHECK_THROWS_AS(green_function(2, cplx(1.0, 0.1), 1.0), Error);
    CHECK_THROWS_AS(green_function(3, 1.0, 0.0), Error);
    CHECK_THROWS_AS(green_function(4, 1.0, 1.0), Error);
}

TEST_CASE("cell constants") {
    CHECK(cell_mean(3, 1.0, 200, [](double r) { return cplx(1.0 / r); }).real() == doctest::Approx(kCubeInvR).epsilon(1e-3));
    CHECK(cell_mean(2, 1.0, 2000, [](double r) { return cplx(std::log(r)); }).real() == doctest::Approx(kSquareLogR).epsilon(1e-5));
}

TEST_CASE("green_cell_average against quadrature") {
    const double dx = 0.1;
    const cplx k1(1.2, 0.1);
    const cplx q1 = cell_mean(1, dx, 20000, [&](double r) { return green_function(1, k1, r); });
    CHECK(std::abs(green_cell_average(1, k1, dx) - q1) < 1e-8 * std::abs(q1));
    const cplx q2 = cell_mean(2, dx, 1000, [](double r) { return green_function(2, 1.0, r); });
    CHECK(std::abs(green_cell_average(2, 1.0, dx) - q2) < 1e-3 * std::abs(q2));
    const cplx k3(1.0, 0.05);
    const cplx q3 = cell_mean(3, dx, 200, [&](double r) { return green_function(3, k3, r); });
    CHECK(std::abs(green_cell_average(3, k3, dx) - q3) < 2e-3 * std::abs(q3));
}

TEST_CASE("sphere_measure_ft against quadrature") {
    // d=2: int over the circle of radius lam of e(x . w), x = (r, 0)
    for (double lam : {0.5, 1.0, 1.7})
        for (double r : {0.0, 0.3, 2.2}) {
            const int n = 4096;
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += std::cos(kTwoPi * r * lam * std::cos(kTwoPi * j / n));
            const double quad = s * kTwoPi * lam / n;
            CHECK(sphere_measure_ft(2, lam, r) == doctest::Approx(quad).epsilon(1e-12).scale(lam));
        }
    // d=3: 2 pi lam^2 int_0^pi e(r lam cos t) sin t dt, Simpson
    for (double lam : {0.5, 1.0})
        for (double r : {0.0, 0.4, 1.9}) {
            const int n = 20000;
            double s = 0.0;
            for (int j = 0; j <= n; ++j) {
                const double t = kPi * j / n;
                const double w = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
                s += w * std::cos(kTwoPi * r * lam * std::cos(t)) * std::sin(t);
            }
            const double quad = kTwoPi * lam * lam * s * (kPi / n) / 3.0;
            CHECK(sphere_measure_ft(3, lam, r) == doctest::Approx(quad).epsilon(1e-9).scale(lam * lam));
        }
    CHECK_THROWS_AS(sphere_measure_ft(1, 1.0, 1.0), Error);
}

TEST_CASE("positive_kernel_radius") {
    CHECK(positive_kernel_radius(2) == doctest::Approx(2.404825557695773 / kTwoPi).epsilon(1e-12));
    CHECK(positive_kernel_radius(3) == doctest::Approx(0.5).epsilon(1e-12));
    for (int d : {2, 3}) {
        const double r0 = positive_kernel_radius(d);
        for (int j = 0; j < 50; ++j) CHECK(sphere_measure_ft(d, 1.0, r0 * j / 50.0) > 0.0);
        CHECK(sphere_measure_ft(d, 1.0, r0 * 1.001) < 0.0);
    }
    CHECK_THROWS_AS(positive_kernel_radius(1), Error);
}
