#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "spectral_lab/core.hpp"

namespace slab {

// Periodic box [-L/2, L/2)^d with N points per axis. Grid point k sits at
// x = (k - N/2) dx; frequency index k is (k - N/2) dxi (centered layout).
struct BoxGrid {
    int d = 1;
    double L = 1.0;
    int N = 8;
    double dx = 0.125;
    double dxi = 1.0;

    std::size_t size() const;
    double cell_volume() const;  // dx^d
    bool operator==(const BoxGrid&) const = default;
};

BoxGrid make_grid(int d, double L, int N);

enum class Space { position, frequency };

struct GridFunction {
    BoxGrid grid;
    std::vector<cplx> values;
    Space space = Space::position;

    GridFunction() = default;
    GridFunction(const BoxGrid& g, Space s = Space::position);

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t i) { return values[i]; }
    const cplx& operator[](std::size_t i) const { return values[i]; }
};

using Index3 = std::array<int, 3>;

Index3 unflatten(const BoxGrid& g, std::size_t flat);
std::size_t flatten(const BoxGrid& g, const Index3& k);
Point position(const BoxGrid& g, std::size_t flat);
Point frequency(const BoxGrid& g, std::size_t flat);

// Fills f(x) (or f(xi) in frequency space) from a callable on points.
GridFunction sample(const BoxGrid& g, const std::function<cplx(const Point&)>& fn,
                    Space s = Space::position);

GridFunction fft_forward(const GridFunction& f);
GridFunction fft_inverse(const GridFunction& F);

// m(D) f for a symbol given in frequency space.
GridFunction apply_symbol(const GridFunction& symbol, const GridFunction& f);

double lp_norm(const GridFunction& f, double p);
double lorentz_weak_norm(const GridFunction& f, double q);

// (1 + dist(x, Q)/h)^{-100 d}, Q = corner + [0, h]^d.
double weight_wQ(const Point& x, const Point& corner, double h, int d);

struct SeparatedSet {
    int d = 1;
    std::vector<Point> points;
    double separation = 0.0;
};

// Exhaustive pairwise check.
double min_pairwise_distance(const SeparatedSet& s);

// Integer lattice points inside the closed ball B(0, R).
SeparatedSet lattice_ball(int d, double R);

std::size_t nearest_index(const BoxGrid& g, const Point& x);
double sample_on_set(const GridFunction& f, const SeparatedSet& lambda, double p);

}  // namespace slab
