#include "spectral_lab/kernels.hpp"

#include <cmath>

namespace slab {

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;

cplx hankel1_0(double x) { return {std::cyl_bessel_j(0.0, x), std::cyl_neumann(0.0, x)}; }
}  // namespace

cplx green_function(int d, cplx k, double r) {
    const cplx i(0.0, 1.0);
    require(r > 0.0 || d == 1, "kernel is singular at r = 0");
    switch (d) {
        case 1:
            return i * std::exp(i * k * r) / (2.0 * k);
        case 2:
            if (k.imag() != 0.0 || k.real() <= 0.0)
                throw Error(Errc::unsupported_dimension, "d=2 kernel needs a positive real wavenumber");
            return 0.25 * i * hankel1_0(k.real() * r);
        case 3:
            return std::exp(i * k * r) / (4.0 * kPi * r);
        default:
            throw Error(Errc::invalid_dimension, "d must be 1, 2 or 3");
    }
}

cplx green_cell_average(int d, cplx k, double dx) {
    const cplx i(0.0, 1.0);
    require(dx > 0.0, "cell size must be positive");
    switch (d) {
        case 1:
            // exact: (1/dx) int_{-dx/2}^{dx/2} i e^{ik|x|}/(2k) dx
            return (std::exp(i * k * (dx / 2)) - 1.0) / (k * k * dx);
        case 2: {
            if (k.imag() != 0.0 || k.real() <= 0.0)
                throw Error(Errc::unsupported_dimension, "d=2 kernel needs a positive real wavenumber");
            // (i/4)H0(kr) = i/4 - (log(kr/2) + gamma)/(2 pi) + O(r^2 log r)
            const double kr = k.real();
            return cplx(-(std::log(kr / 2.0) + kEulerGamma + std::log(dx) + kSquareLogR) / kTwoPi, 0.25);
        }
        case 3:
            // e^{ikr}/(4 pi r) = 1/(4 pi r) + (e^{ikr} - 1)/(4 pi r), the latter -> ik/(4 pi)
            return kCubeInvR / (4.0 * kPi * dx) + i * k / (4.0 * kPi);
        default:
            throw Error(Errc::invalid_dimension, "d must be 1, 2 or 3");
    }
}

double sphere_measure_ft(int d, double lam, double r) {
    const double s = kTwoPi * lam * r;
    if (d == 2) return kTwoPi * lam * std::cyl_bessel_j(0.0, s);
    if (d == 3) return 4.0 * kPi * lam * lam * (s == 0.0 ? 1.0 : std::sin(s) / s);
    throw Error(Errc::unsupported_dimension, "sphere measure transform needs d = 2 or 3");
}

double positive_kernel_radius(int d) {
    static const double cached[2] = {
        [] {
            double lo = 0.0, hi = 0.5;  // J0(pi) < 0
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (sphere_measure_ft(2, 1.0, mid) > 0.0 ? lo : hi) = mid;
            }
            return lo;
        }(),
        [] {
            double lo = 0.0, hi = 0.75;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (sphere_measure_ft(3, 1.0, mid) > 0.0 ? lo : hi) = mid;
            }
            return lo;
        }(),
    };
    if (d == 2 || d == 3) return cached[d - 2];
    throw Error(Errc::unsupported_dimension, "positive kernel radius needs d = 2 or 3");
}

}  // namespace slab
