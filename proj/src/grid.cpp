#include "spectral_lab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"

namespace slab {

std::size_t BoxGrid::size() const {
    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(N);
    return n;
}

double BoxGrid::cell_volume() const { return std::pow(dx, d); }

BoxGrid make_grid(int d, double L, int N) {
    if (d < 1 || d > 3) throw Error(Errc::invalid_dimension, "d must be 1, 2 or 3");
    require(L > 0.0 && std::isfinite(L), "box length must be positive");
    require(N >= 8 && (N & (N - 1)) == 0, "N must be a power of two >= 8");
    // 2^30 complex doubles is 16 GiB, far past desk scale.
    const double total = std::pow(static_cast<double>(N), d);
    if (total > static_cast<double>(1ULL << 30)) throw Error(Errc::size_overflow, "N^d too large");
    BoxGrid g;
    g.d = d;
    g.L = L;
    g.N = N;
    g.dx = L / N;
    g.dxi = 1.0 / L;
    return g;
}

GridFunction::GridFunction(const BoxGrid& g, Space s) : grid(g), values(g.size()), space(s) {}

Index3 unflatten(const BoxGrid& g, std::size_t flat) {
    Index3 k{0, 0, 0};
    for (int i = g.d - 1; i >= 0; --i) {
        k[i] = static_cast<int>(flat % static_cast<std::size_t>(g.N));
        flat /= static_cast<std::size_t>(g.N);
    }
    return k;
}

std::size_t flatten(const BoxGrid& g, const Index3& k) {
    std::size_t flat = 0;
    for (int i = 0; i < g.d; ++i) flat = flat * static_cast<std::size_t>(g.N) + static_cast<std::size_t>(k[i]);
    return flat;
}

Point position(const BoxGrid& g, std::size_t flat) {
    const Index3 k = unflatten(g, flat);
    Point x{0.0, 0.0, 0.0};
    for (int i = 0; i < g.d; ++i) x[i] = (k[i] - g.N / 2) * g.dx;
    return x;
}

Point frequency(const BoxGrid& g, std::size_t flat) {
    const Index3 k = unflatten(g, flat);
    Point xi{0.0, 0.0, 0.0};
    for (int i = 0; i < g.d; ++i) xi[i] = (k[i] - g.N / 2) * g.dxi;
    return xi;
}

GridFunction sample(const BoxGrid& g, const std::function<cplx(const Point&)>& fn, Space s) {
    GridFunction f(g, s);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = fn(s == Space::position ? position(g, i) : frequency(g, i));
    return f;
}

namespace {

int index_parity(const BoxGrid& g, std::size_t flat) {
    const Index3 k = unflatten(g, flat);
    int s = 0;
    for (int i = 0; i < g.d; ++i) s += k[i];
    return s & 1;
}

std::vector<int> dims_of(const BoxGrid& g) { return std::vector<int>(g.d, g.N); }

}  // namespace

// With x = (n - N/2) dx and xi = (k - N/2) dxi the continuum phase
// e(-x.xi) factors as (-1)^n (-1)^k exp(-2 pi i n k / N) because N/4 is an
// integer for N >= 8.
GridFunction fft_forward(const GridFunction& f) {
    if (f.space != Space::position) throw Error(Errc::wrong_space, "fft_forward needs position space");
    GridFunction F = f;
    F.space = Space::frequency;
    for (std::size_t i = 0; i < F.size(); ++i)
        if (index_parity(f.grid, i)) F[i] = -F[i];
    detail::dft_inplace(F.values, dims_of(f.grid), -1);
    const double scale = f.grid.cell_volume();
    for (std::size_t i = 0; i < F.size(); ++i) F[i] *= index_parity(f.grid, i) ? -scale : scale;
    return F;
}

GridFunction fft_inverse(const GridFunction& F) {
    if (F.space != Space::frequency) throw Error(Errc::wrong_space, "fft_inverse needs frequency space");
    GridFunction f = F;
    f.space = Space::position;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (index_parity(F.grid, i)) f[i] = -f[i];
    detail::dft_inplace(f.values, dims_of(F.grid), +1);
    const double scale = std::pow(F.grid.dxi, F.grid.d);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= index_parity(F.grid, i) ? -scale : scale;
    return f;
}

GridFunction apply_symbol(const GridFunction& symbol, const GridFunction& f) {
    if (symbol.space != Space::frequency) throw Error(Errc::wrong_space, "symbol must be in frequency space");
    if (!(symbol.grid == f.grid)) throw Error(Errc::incompatible_stage, "symbol and function grids differ");
    GridFunction F = fft_forward(f);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] *= symbol[i];
    return fft_inverse(F);
}

double lp_norm(const GridFunction& f, double p) {
    require(p >= 1.0, "p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    const double mu = f.space == Space::position ? f.grid.cell_volume() : std::pow(f.grid.dxi, f.grid.d);
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values) s += std::norm(v);
    } else {
        for (const auto& v : f.values) s += std::pow(std::abs(v), p);
    }
    return std::pow(mu * s, 1.0 / p);
}

// sup_t t |{|f| > t}|^{1/q}: just below each attained value a the level set
// is {|f| >= a}, so the sup is a max over sorted values.
double lorentz_weak_norm(const GridFunction& f, double q) {
    require(q >= 1.0, "q must be >= 1");
    std::vector<double> a;
    a.reserve(f.size());
    for (const auto& v : f.values)
        if (std::abs(v) > 0.0) a.push_back(std::abs(v));
    std::sort(a.begin(), a.end(), std::greater<>());
    const double mu = f.grid.cell_volume();
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
        best = std::max(best, a[i] * std::pow(mu * static_cast<double>(i + 1), 1.0 / q));
    }
    return best;
}

double weight_wQ(const Point& x, const Point& corner, double h, int d) {
    require(h > 0.0, "cube side must be positive");
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double lo = corner[i], hi = corner[i] + h;
        const double t = x[i] < lo ? lo - x[i] : (x[i] > hi ? x[i] - hi : 0.0);
        s += t * t;
    }
    const double w = std::pow(1.0 + std::sqrt(s) / h, -100.0 * d);
    return w < 1e-300 ? 0.0 : w;
}

double min_pairwise_distance(const SeparatedSet& s) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.points.size(); ++i)
        for (std::size_t j = i + 1; j < s.points.size(); ++j)
            m = std::min(m, dist(s.points[i], s.points[j], s.d));
    return m;
}

SeparatedSet lattice_ball(int d, double R) {
    SeparatedSet s;
    s.d = d;
    s.separation = 1.0;
    const int r = static_cast<int>(std::floor(R));
    const int lo1 = d > 1 ? -r : 0, lo2 = d > 2 ? -r : 0;
    const int hi1 = d > 1 ? r : 0, hi2 = d > 2 ? r : 0;
    for (int a = -r; a <= r; ++a)
        for (int b = lo1; b <= hi1; ++b)
            for (int c = lo2; c <= hi2; ++c) {
                Point p{double(a), double(b), double(c)};
                if (norm(p, d) <= R) s.points.push_back(p);
            }
    return s;
}

std::size_t nearest_index(const BoxGrid& g, const Point& x) {
    Index3 k{0, 0, 0};
    for (int i = 0; i < g.d; ++i) {
        if (!(x[i] >= -g.L / 2 && x[i] < g.L / 2)) throw Error(Errc::point_outside_box, "sample point outside box");
        long v = std::lround(x[i] / g.dx) + g.N / 2;
        if (v >= g.N) v -= g.N;
        k[i] = static_cast<int>(v);
    }
    return flatten(g, k);
}

double sample_on_set(const GridFunction& f, const SeparatedSet& lambda, double p) {
    require(p >= 1.0, "p must be >= 1");
    double s = 0.0;
    for (const auto& x : lambda.points) {
        const double v = std::abs(f[nearest_index(f.grid, x)]);
        if (std::isinf(p))
            s = std::max(s, v);
        else
            s += std::pow(v, p);
    }
    return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

}  // namespace slab
