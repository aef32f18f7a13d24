#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace slab {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;  // unused trailing coordinates are zero

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Errc {
    invalid_dimension,
    size_overflow,
    wrong_space,
    point_outside_box,
    misaligned_scale,
    box_too_small,
    parameter_overflow,
    singular_symbol,
    branch_ambiguity,
    incompatible_stage,
    no_convergence,
    overflow,
    unsupported_dimension,
    precondition,
    endpoint_q,
    q_out_of_range,
    region_touches_axis,
    insufficient_samples,
    net_too_coarse,
    config,
    io,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const { return code_; }

private:
    Errc code_;
};

// Throws Error(Errc::precondition) with msg when cond is false.
void require(bool cond, const char* msg);

// e(t) = exp(2 pi i t)
inline cplx e2pi(double t) {
    const double a = kTwoPi * t;
    return {std::cos(a), std::sin(a)};
}

inline double dot(const Point& a, const Point& b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
}

inline double dist(const Point& a, const Point& b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline double norm(const Point& a, int d) {
    return std::sqrt(dot(a, a, d));
}

// <x> = 2 + |x|
inline double bracket(double r) { return 2.0 + std::abs(r); }

}  // namespace slab
