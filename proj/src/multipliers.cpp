#include "spectral_lab/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "spectral_lab/kernels.hpp"
#include "spectral_lab/parallel.hpp"

namespace slab {

ComplexEnergy ComplexEnergy::make(double lambda, double eps) {
    require(lambda > 0.0, "lambda must be positive");
    require(std::abs(eps) <= lambda / 10.0, "|eps| must be <= lambda/10");
    return {lambda, eps};
}

cplx ComplexEnergy::z() const {
    const cplx k(lambda, eps);
    return k * k;
}

namespace {

double smooth_step_part(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double radius2pi(const Point& xi, int d) { return kTwoPi * norm(xi, d); }

}  // namespace

double cutoff(double s) {
    s = std::abs(s);
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double a = smooth_step_part(2.0 - s), b = smooth_step_part(s - 1.0);
    return a / (a + b);
}

MultiplierSpec resolvent_symbol(cplx z, const BoxGrid& g, double eps0) {
    if (z.imag() == 0.0 && z.real() >= 0.0) {
        if (!(eps0 > 0.0)) throw Error(Errc::singular_symbol, "z on [0, inf) needs a regularization eps0 > 0");
        const cplx k(std::sqrt(z.real()), eps0);
        z = k * k;
    }
    MultiplierSpec m;
    m.symbol = GridFunction(g, Space::frequency);
    for (std::size_t i = 0; i < m.symbol.size(); ++i) {
        const double r = radius2pi(frequency(g, i), g.d);
        const cplx den = r * r - z;
        if (den == 0.0) throw Error(Errc::singular_symbol, "z coincides with a lattice frequency");
        m.symbol[i] = 1.0 / den;
    }
    return m;
}

MultiplierSpec resolvent_symbol(const ComplexEnergy& e, const BoxGrid& g, double eps0) {
    return resolvent_symbol(e.z(), g, eps0);
}

std::pair<MultiplierSpec, MultiplierSpec> lowhigh_split(const MultiplierSpec& m) {
    MultiplierSpec low = m, high = m;
    const BoxGrid& g = m.symbol.grid;
    for (std::size_t i = 0; i < m.symbol.size(); ++i) {
        const double chi = cutoff(std::max(0.0, 2.0 * radius2pi(frequency(g, i), g.d) - 2.0));  // 1 on r <= 3/2, 0 on r >= 2
        low.symbol[i] = chi * m.symbol[i];
        high.symbol[i] = m.symbol[i] - low.symbol[i];
    }
    low.support = SupportKind::ball;
    low.r_outer = 2.0;
    high.support = SupportKind::annulus;
    high.r_inner = 1.5;
    return {low, high};
}

namespace {

void require_cutoff_fits(const BoxGrid& g, double R) {
    require(R >= 1.0, "smoothing scale R must be >= 1");
    if (2.0 * R > g.L / 2) throw Error(Errc::box_too_small, "cutoff support 2R exceeds half the box");
}

MultiplierSpec from_cut_kernel(GridFunction kernel, double R) {
    const BoxGrid& g = kernel.grid;
    for (std::size_t i = 0; i < kernel.size(); ++i) kernel[i] *= cutoff(norm(position(g, i), g.d) / R);
    MultiplierSpec out;
    out.symbol = fft_forward(kernel);
    out.smoothing_scale = 1.0 / R;
    return out;
}

}  // namespace

MultiplierSpec smooth_symbol(const MultiplierSpec& m, double R) {
    require_cutoff_fits(m.symbol.grid, R);
    MultiplierSpec out = from_cut_kernel(fft_inverse(m.symbol), R);
    out.delta = m.delta;
    return out;
}

MultiplierSpec smoothed_boundary_resolvent(double lambda, double R, const BoxGrid& g) {
    require(lambda > 0.0, "lambda must be positive");
    require_cutoff_fits(g, R);
    GridFunction kernel(g);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        const double r = norm(position(g, i), g.d);
        kernel[i] = r == 0.0 ? green_cell_average(g.d, lambda, g.dx) : green_function(g.d, lambda, r);
    }
    return from_cut_kernel(std::move(kernel), R);
}

namespace {

// Winding of the symbol around 0 along one lattice plaquette.
int plaquette_winding(cplx a, cplx b, cplx c, cplx d) {
    const double s = std::arg(b / a) + std::arg(c / b) + std::arg(d / c) + std::arg(a / d);
    return static_cast<int>(std::lround(s / kTwoPi));
}

bool crosses_cut(cplx a, cplx b) {
    return a.real() < 0.0 && b.real() < 0.0 && ((a.imag() >= 0.0) != (b.imag() >= 0.0));
}

}  // namespace

MultiplierSpec cdelta_sqrt(const MultiplierSpec& m_smoothed, double delta) {
    require(delta > 0.0, "delta must be positive");
    require(m_smoothed.smoothing_scale > 0.0 &&
                std::abs(m_smoothed.smoothing_scale - delta) <= 1e-12 * delta,
            "C^(delta) needs a symbol smoothed at scale R = 1/delta");
    const GridFunction& s = m_smoothed.symbol;
    const BoxGrid& g = s.grid;
    std::vector<double> band(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        band[i] = cutoff(2.0 * std::abs(radius2pi(frequency(g, i), g.d) - 1.0) / kSphereBand);

    MultiplierSpec out;
    out.symbol = GridFunction(g, Space::frequency);
    out.delta = delta;
    out.support = SupportKind::annulus;
    out.r_inner = 1.0 - kSphereBand;
    out.r_outer = 1.0 + kSphereBand;
    out.smoothing_scale = m_smoothed.smoothing_scale;

    const int N = g.N;
    auto shift = [&](std::size_t flat, int axis) -> long {
        Index3 k = unflatten(g, flat);
        if (k[axis] + 1 >= N) return -1;
        k[axis] += 1;
        return static_cast<long>(flatten(g, k));
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.symbol[i] = band[i] * std::sqrt(s[i]);
        if (band[i] == 0.0) continue;
        for (int a = 0; a < g.d; ++a) {
            const long j = shift(i, a);
            if (j >= 0 && band[j] > 0.0 && crosses_cut(s[i], s[j])) ++out.branch_crossings;
            for (int b = a + 1; b < g.d; ++b) {
                const long jb = shift(i, b);
                if (j < 0 || jb < 0) continue;
                const long jab = shift(static_cast<std::size_t>(j), b);
                if (band[j] == 0.0 || band[jb] == 0.0 || band[jab] == 0.0) continue;
                const cplx v0 = s[i], v1 = s[j], v2 = s[jab], v3 = s[jb];
                if (v0 == 0.0 || v1 == 0.0 || v2 == 0.0 || v3 == 0.0) continue;
                if (plaquette_winding(v0, v1, v2, v3) != 0)
                    throw Error(Errc::branch_ambiguity, "smoothed symbol winds around 0 inside the sphere band");
            }
        }
    }
    return out;
}

double cdelta_constant(const MultiplierSpec& c) {
    require(c.delta > 0.0, "multiplier carries no delta");
    const BoxGrid& g = c.symbol.grid;
    double K = 0.0;
    for (std::size_t i = 0; i < c.symbol.size(); ++i) {
        const double r = radius2pi(frequency(g, i), g.d);
        K = std::max(K, std::abs(c.symbol[i]) * std::sqrt(std::abs(r * r - 1.0) + c.delta));
    }
    return K;
}

namespace {

std::size_t reflect(const BoxGrid& g, std::size_t flat) {
    Index3 k = unflatten(g, flat);
    for (int i = 0; i < g.d; ++i) k[i] = (g.N - k[i]) % g.N;
    return flatten(g, k);
}

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace

// phi = c psi * psi with psi(x) = R^d bump(2 R |x|), so hat phi = c hat psi^2.
MultiplierSpec make_phi(double R, const BoxGrid& g) {
    require(R >= 1.0, "R must be >= 1");
    require(g.dx * R <= 0.125, "grid too coarse to resolve phi_R");
    if (1.0 / R >= g.L / 4) throw Error(Errc::box_too_small, "phi_R support does not fit");
    GridFunction psi(g);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::pow(R, g.d) * bump(2.0 * R * norm(position(g, i), g.d));
    GridFunction ph = fft_forward(psi);
    for (std::size_t i = 0; i < ph.size(); ++i) {
        const std::size_t j = reflect(g, i);
        if (j < i) continue;
        const double v = 0.5 * (ph[i].real() + ph[j].real());
        ph[i] = v;
        ph[j] = v;
    }
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ph.size(); ++i)
        if (norm(frequency(g, i), g.d) <= R) lo = std::min(lo, ph[i].real() * ph[i].real());
    if (!(lo > 0.0)) throw Error(Errc::precondition, "hat psi vanishes inside B(0, R)");
    const double c = (1.0 + 1e-12) / lo;
    MultiplierSpec out;
    out.symbol = GridFunction(g, Space::frequency);
    for (std::size_t i = 0; i < ph.size(); ++i) out.symbol[i] = c * ph[i].real() * ph[i].real();
    out.smoothing_scale = 1.0 / R;
    return out;
}

double SphereNet::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double min_node_distance(const SphereNet& net) {
    // bucket by cells of side `separation`-ish to keep the check near linear
    const double cell = std::max(net.separation, 1e-12);
    std::unordered_map<long long, std::vector<std::size_t>> buckets;
    auto key = [&](const Index3& c) {
        return (static_cast<long long>(c[0]) * 1000003LL + c[1]) * 1000003LL + c[2];
    };
    auto cell_of = [&](const Point& p) {
        Index3 c{0, 0, 0};
        for (int i = 0; i < net.d; ++i) c[i] = static_cast<int>(std::floor(p[i] / cell));
        return c;
    };
    for (std::size_t i = 0; i < net.nodes.size(); ++i) buckets[key(cell_of(net.nodes[i]))].push_back(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const Index3 c = cell_of(net.nodes[i]);
        for (int a = -1; a <= 1; ++a)
            for (int b = (net.d > 1 ? -1 : 0); b <= (net.d > 1 ? 1 : 0); ++b)
                for (int e = (net.d > 2 ? -1 : 0); e <= (net.d > 2 ? 1 : 0); ++e) {
                    auto it = buckets.find(key({c[0] + a, c[1] + b, c[2] + e}));
                    if (it == buckets.end()) continue;
                    for (std::size_t j : it->second)
                        if (j > i) best = std::min(best, dist(net.nodes[i], net.nodes[j], net.d));
                }
    }
    if (best <= cell) return best;  // pairs in non-adjacent buckets are farther than `cell`
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < net.nodes.size(); ++j) best = std::min(best, dist(net.nodes[i], net.nodes[j], net.d));
    return best;
}

SphereNet sphere_net(double lambda, double R, int d) {
    require(lambda > 0.0, "lambda must be positive");
    require(R >= 2.0, "R must be >= 2");
    SphereNet net;
    net.d = d;
    net.lambda = lambda;
    net.separation = 1.0 / R;
    if (d == 2) {
        // largest n whose chord 2 lambda sin(pi/n) is still >= 1/R
        std::size_t n = static_cast<std::size_t>(std::floor(kTwoPi * lambda * R)) + 1;
        while (n > 3 && 2.0 * lambda * std::sin(kPi / n) < 1.0 / R) --n;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = kTwoPi * i / n;
            net.nodes.push_back({lambda * std::cos(t), lambda * std::sin(t), 0.0});
            net.weights.push_back(kTwoPi * lambda / n);
        }
    } else if (d == 3) {
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        std::size_t n = static_cast<std::size_t>(std::floor(4.0 * kPi * lambda * lambda * R * R));
        for (;;) {
            net.nodes.clear();
            for (std::size_t i = 0; i < n; ++i) {
                const double zc = 1.0 - (2.0 * i + 1.0) / n;
                const double rc = std::sqrt(std::max(0.0, 1.0 - zc * zc));
                const double t = golden * i;
                net.nodes.push_back({lambda * rc * std::cos(t), lambda * rc * std::sin(t), lambda * zc});
            }
            if (n <= 4 || min_node_distance(net) >= 1.0 / R) break;
            n = static_cast<std::size_t>(n * 0.97);
        }
        net.weights.assign(net.nodes.size(), 4.0 * kPi * lambda * lambda / net.nodes.size());
    } else {
        throw Error(Errc::unsupported_dimension, "sphere nets need d = 2 or 3");
    }
    return net;
}

GridFunction extension_apply(const SphereNet& net, const std::vector<cplx>& g, const BoxGrid& grid) {
    require(g.size() == net.size(), "node values do not match the net");
    require(grid.d == net.d, "grid and net dimensions differ");
    GridFunction out(grid);
    parallel_for(out.size(), [&](std::size_t i) {
        const Point x = position(grid, i);
        cplx s = 0.0;
        for (std::size_t k = 0; k < net.size(); ++k) s += net.weights[k] * e2pi(dot(x, net.nodes[k], grid.d)) * g[k];
        out[i] = s;
    });
    return out;
}

Eigen::MatrixXcd discres_matrix(const SphereNet& net, const SeparatedSet& targets) {
    const double entries = static_cast<double>(net.size()) * static_cast<double>(targets.points.size());
    if (entries > static_cast<double>(1 << 25)) throw Error(Errc::size_overflow, "Discres matrix too large for dense storage");
    require(targets.d == net.d, "target and net dimensions differ");
    Eigen::MatrixXcd S(targets.points.size(), net.size());
    for (std::size_t r = 0; r < targets.points.size(); ++r)
        for (std::size_t c = 0; c < net.size(); ++c) S(r, c) = e2pi(dot(net.nodes[c], targets.points[r], net.d));
    return S;
}

std::vector<cplx> knapp_datum(const SphereNet& net, double R) {
    require(R >= 1.0, "R must be >= 1");
    std::vector<cplx> g(net.size());
    const double amp = std::pow(R, (net.d - 1) / 4.0);
    double l2 = 0.0;
    for (std::size_t k = 0; k < net.size(); ++k) {
        const Point u{net.nodes[k][0] / net.lambda, net.nodes[k][1] / net.lambda, net.nodes[k][2] / net.lambda};
        double s = R * (u[0] - 1.0);
        s *= s;
        for (int i = 1; i < net.d; ++i) s += R * u[i] * u[i];
        g[k] = amp * cutoff(std::sqrt(s));
        l2 += net.weights[k] * std::norm(g[k]);
    }
    require(l2 > 0.0, "net too coarse to resolve the Knapp cap");
    for (auto& v : g) v /= std::sqrt(l2);
    return g;
}

}  // namespace slab
