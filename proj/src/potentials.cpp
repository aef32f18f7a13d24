#include "spectral_lab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectral_lab/rng.hpp"

namespace slab {

const char* distribution_name(Distribution d) {
    switch (d) {
        case Distribution::bernoulli: return "bernoulli-symmetric";
        case Distribution::gaussian: return "gaussian-standard";
        case Distribution::unit: return "unit";
    }
    return "unknown";
}

Distribution parse_distribution(const std::string& s) {
    if (s == "bernoulli-symmetric" || s == "bernoulli") return Distribution::bernoulli;
    if (s == "gaussian-standard" || s == "gaussian") return Distribution::gaussian;
    if (s == "unit") return Distribution::unit;
    throw Error(Errc::config, "unknown distribution '" + s + "'");
}

namespace {

std::uint64_t cell_key(const CellIndex& j) {
    std::uint64_t k = 0x243F6A8885A308D3ULL;
    for (int v : j) k = splitmix64(k ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    return k;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double cell_weight(const RandomizationScheme& s, const CellIndex& j) {
    if (s.distribution == Distribution::unit) return 1.0;
    CounterRng rng(s.seed, cell_key(j) << 2);
    return s.distribution == Distribution::bernoulli ? rng.sign() : rng.normal();
}

int cells_per_block(const BoxGrid& g, double h) {
    require(h > 0.0, "scale must be positive");
    const double r = h / g.dx;
    const double m = std::round(r);
    if (m < 1.0 || std::abs(r - m) > 1e-9 * std::max(1.0, r))
        throw Error(Errc::misaligned_scale, "h must be an integer multiple of dx");
    return static_cast<int>(m);
}

CellIndex cell_of(const BoxGrid& g, std::size_t flat, int per_block) {
    const Index3 k = unflatten(g, flat);
    CellIndex j{0, 0, 0};
    for (int i = 0; i < g.d; ++i) j[i] = static_cast<int>(floor_div(k[i] - g.N / 2, per_block));
    return j;
}

GridFunction anderson_potential(const std::map<CellIndex, cplx>& coeffs, double h, const BoxGrid& g) {
    const int m = cells_per_block(g, h);
    const int half_cells = g.N / 2 / m;  // cells per half axis, floor
    for (const auto& [j, v] : coeffs)
        for (int i = 0; i < g.d; ++i)
            if (j[i] < -half_cells || (j[i] + 1) * m > g.N / 2)
                throw Error(Errc::box_too_small, "coefficient cell outside the box");
    GridFunction V(g);
    for (std::size_t flat = 0; flat < V.size(); ++flat) {
        auto it = coeffs.find(cell_of(g, flat, m));
        if (it != coeffs.end()) V[flat] = it->second;
    }
    return V;
}

RandomPotential randomize(const GridFunction& profile, const RandomizationScheme& scheme) {
    if (profile.space != Space::position) throw Error(Errc::wrong_space, "profile must be in position space");
    const int m = cells_per_block(profile.grid, scheme.h);
    RandomPotential out;
    out.profile = profile;
    out.scheme = scheme;
    out.realized = GridFunction(profile.grid);
    std::map<CellIndex, double> omega;
    for (std::size_t flat = 0; flat < profile.size(); ++flat) {
        if (profile[flat] == 0.0) continue;
        const CellIndex j = cell_of(profile.grid, flat, m);
        auto it = omega.find(j);
        if (it == omega.end()) it = omega.emplace(j, cell_weight(scheme, j)).first;
        out.realized[flat] = it->second * profile[flat];
    }
    out.omega.assign(omega.begin(), omega.end());
    return out;
}

namespace {

double max_abs_transverse(const Point& x, int d) {
    double m = 0.0;
    for (int i = 1; i < d; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

Point cell_center(const BoxGrid& g, std::size_t flat) {
    Point x = position(g, flat);
    for (int i = 0; i < g.d; ++i) x[i] += 0.5 * g.dx;
    return x;
}

}  // namespace

GridFunction tube_potential(double eps, const BoxGrid& g) {
    require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
    const double a = 1.0 / eps, b = 1.0 / std::sqrt(eps);
    if (a >= g.L / 2 || (g.d > 1 && b >= g.L / 2)) throw Error(Errc::box_too_small, "tube does not fit the box");
    GridFunction V(g);
    for (std::size_t flat = 0; flat < V.size(); ++flat) {
        const Point x = cell_center(g, flat);
        if (std::abs(x[0]) < a && max_abs_transverse(x, g.d) < b) V[flat] = eps;
    }
    return V;
}

namespace {
double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}
}  // namespace

GridFunction knapp_tube(double R, double q, const BoxGrid& g, bool smooth) {
    require(R >= 4.0, "R must be >= 4");
    require(q >= 1.0, "q must be >= 1");
    const double w = std::sqrt(R);
    if (R >= g.L / 2 || (g.d > 1 && w >= g.L / 2)) throw Error(Errc::box_too_small, "Knapp tube does not fit the box");
    GridFunction V(g);
    for (std::size_t flat = 0; flat < V.size(); ++flat) {
        const Point x = cell_center(g, flat);
        if (smooth) {
            double v = bump(x[0] / R);
            for (int i = 1; i < g.d; ++i) v *= bump(x[i] / w);
            V[flat] = v;
        } else if (std::abs(x[0]) < R && max_abs_transverse(x, g.d) < w) {
            V[flat] = 1.0;
        }
    }
    double scale;
    if (smooth) {
        scale = 1.0 / lp_norm(V, q);
    } else {
        const double volume = std::pow(2.0, g.d) * std::pow(R, (g.d + 1) / 2.0);
        scale = std::pow(volume, -1.0 / q);
    }
    for (auto& v : V.values) v *= scale;
    return V;
}

namespace {

std::vector<double> sorted_magnitudes(const GridFunction& V) {
    std::vector<double> a;
    for (const auto& v : V.values)
        if (std::abs(v) > 0.0) a.push_back(std::abs(v));
    std::sort(a.begin(), a.end(), std::greater<>());
    return a;
}

// Largest count c with c * mu <= 2^{i-1}.
std::size_t allowed_count(double mu, int i) {
    const double cap = std::ldexp(1.0, i - 1);
    double c = std::floor(cap / mu);
    while (c > 0 && c * mu > cap) c -= 1;
    while ((c + 1) * mu <= cap) c += 1;
    return c > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(c);
}

// |{|V| > t}| <= cap holds iff t >= a_{c+1} (1-based), so the infimum over
// t > 0 is that value, or 0 when every value fits.
double height_from_sorted(const std::vector<double>& a, double mu, int i) {
    const std::size_t c = allowed_count(mu, i);
    return c < a.size() ? a[c] : 0.0;
}

}  // namespace

double dyadic_height(const GridFunction& V, int i) {
    return height_from_sorted(sorted_magnitudes(V), V.grid.cell_volume(), i);
}

std::vector<DyadicLevel> dyadic_levels(const GridFunction& V) {
    std::vector<DyadicLevel> out;
    const auto a = sorted_magnitudes(V);
    if (a.empty()) return out;
    const double mu = V.grid.cell_volume();
    int i = static_cast<int>(std::floor(std::log2(mu))) - 1;  // 2^{i-1} < mu: H_i = max|V|
    double H = height_from_sorted(a, mu, i);
    while (H > 0.0) {
        const double Hn = height_from_sorted(a, mu, i + 1);
        DyadicLevel lev;
        lev.i = i;
        lev.H = H;
        lev.H_next = Hn;
        lev.V = GridFunction(V.grid);
        bool any = false;
        for (std::size_t k = 0; k < V.size(); ++k) {
            const double m = std::abs(V[k]);
            if (m > Hn && m <= H) {
                lev.V[k] = V[k];
                any = true;
            }
        }
        if (any) out.push_back(std::move(lev));
        H = Hn;
        ++i;
    }
    return out;
}

std::size_t SparseLevel::max_balls() const {
    std::size_t m = 0;
    for (const auto& f : families) m = std::max(m, f.balls.size());
    return m;
}

double SparseLevel::max_radius() const {
    double m = 0.0;
    for (const auto& f : families) m = std::max(m, f.radius);
    return m;
}

namespace {

struct UnitCell {
    CellIndex index;
    Point center;
    double mass = 0.0;
    std::vector<std::size_t> points;
};

// Distance from c to the farthest corner of the unit cube around u.
double farthest_corner(const Point& c, const Point& u, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double t = std::abs(c[i] - u[i]) + 0.5;
        s += t * t;
    }
    return std::sqrt(s);
}

struct Cluster {
    Point center;
    std::vector<std::size_t> cells;
};

// Heaviest unassigned cell becomes a centre and absorbs every unassigned
// cell whose cube lies in the closed ball of radius R.
std::vector<Cluster> greedy_cluster(const std::vector<UnitCell>& cells, const std::vector<std::size_t>& order,
                                    double R, int d) {
    std::vector<Cluster> out;
    std::vector<char> taken(cells.size(), 0);
    for (std::size_t a : order) {
        if (taken[a]) continue;
        Cluster cl{cells[a].center, {}};
        for (std::size_t b : order)
            if (!taken[b] && farthest_corner(cl.center, cells[b].center, d) <= R) {
                taken[b] = 1;
                cl.cells.push_back(b);
            }
        out.push_back(std::move(cl));
    }
    return out;
}

}  // namespace

// Layered greedy. Layer k clusters the remaining cells into balls of radius
// R_k, requires separation S_k = (R_k n)^gamma, and emits (greedily
// coloured) every ball with at most ceil(n^{1/K}) neighbours closer than S_k.
// Crowded balls are merged at the next layer with R_{k+1} = S_k + R_k, capped
// at the radius that covers all remaining cells. The last layer emits all.
SparseLevel sparse_split(const GridFunction& Vi, double gamma, int K) {
    require(gamma >= 1.0, "gamma must be >= 1");
    require(K >= 1, "K must be >= 1");
    const BoxGrid& g = Vi.grid;
    const int d = g.d;

    std::map<CellIndex, std::size_t> lookup;
    std::vector<UnitCell> cells;
    for (std::size_t flat = 0; flat < Vi.size(); ++flat) {
        if (Vi[flat] == 0.0) continue;
        const Point x = position(g, flat);
        CellIndex j{0, 0, 0};
        for (int i = 0; i < d; ++i) j[i] = static_cast<int>(std::floor(x[i]));
        auto it = lookup.find(j);
        if (it == lookup.end()) {
            it = lookup.emplace(j, cells.size()).first;
            UnitCell c;
            c.index = j;
            for (int i = 0; i < d; ++i) c.center[i] = j[i] + 0.5;
            cells.push_back(c);
        }
        cells[it->second].mass += std::abs(Vi[flat]);
        cells[it->second].points.push_back(flat);
    }

    SparseLevel out;
    out.gamma = gamma;
    out.K = K;
    out.n_cells = cells.size();
    if (cells.empty()) return out;

    const double n = static_cast<double>(cells.size());
    const std::size_t budget = static_cast<std::size_t>(std::ceil(std::pow(n, 1.0 / K) - 1e-12));
    const double box_diag = g.L * std::sqrt(static_cast<double>(d));

    std::vector<std::size_t> remaining(cells.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    std::stable_sort(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
        if (cells[a].mass != cells[b].mass) return cells[a].mass > cells[b].mass;
        return cells[a].index < cells[b].index;
    });

    double R = std::sqrt(static_cast<double>(d)) / 2.0;
    for (int layer = 0; !remaining.empty(); ++layer) {
        const bool last = layer >= K;
        const double S = std::pow(R * n, gamma);
        if (!std::isfinite(S) || !std::isfinite(R) || R > box_diag)
            throw Error(Errc::parameter_overflow, "sparse split radius or separation overflow");
        auto clusters = greedy_cluster(cells, remaining, R, d);

        std::vector<std::size_t> degree(clusters.size(), 0);
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = 0; b < clusters.size(); ++b)
                if (a != b && dist(clusters[a].center, clusters[b].center, d) < S) ++degree[a];

        std::vector<SparseFamily> fams;
        std::vector<std::size_t> kept;
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            if (!last && degree[a] > budget) {
                for (std::size_t c : clusters[a].cells) kept.push_back(c);
                continue;
            }
            SparseBall ball;
            ball.center = clusters[a].center;
            for (std::size_t c : clusters[a].cells)
                ball.points.insert(ball.points.end(), cells[c].points.begin(), cells[c].points.end());
            std::sort(ball.points.begin(), ball.points.end());
            bool placed = false;
            for (auto& f : fams) {
                bool ok = true;
                for (const auto& other : f.balls)
                    if (dist(other.center, ball.center, d) < S) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    f.balls.push_back(std::move(ball));
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                SparseFamily f;
                f.radius = R;
                f.separation = S;
                f.balls.push_back(std::move(ball));
                fams.push_back(std::move(f));
            }
        }
        for (auto& f : fams) out.families.push_back(std::move(f));

        // keep mass order for the next layer
        std::vector<char> keep(cells.size(), 0);
        for (std::size_t c : kept) keep[c] = 1;
        std::vector<std::size_t> next;
        for (std::size_t c : remaining)
            if (keep[c]) next.push_back(c);
        remaining.swap(next);
        if (remaining.empty()) break;

        double cover = 0.0;
        for (std::size_t c : remaining)
            cover = std::max(cover, farthest_corner(cells[remaining.front()].center, cells[c].center, d));
        R = std::min(S + R, cover);
    }
    return out;
}

GridFunction sparse_piece(const GridFunction& Vi, const SparseBall& ball) {
    GridFunction out(Vi.grid);
    for (std::size_t p : ball.points) out[p] = Vi[p];
    return out;
}

std::vector<double> sample_subgaussian(const RandomizationScheme& scheme, std::size_t count) {
    require(count >= 100, "need at least 100 samples");
    CounterRng rng(scheme.seed);
    std::vector<double> x(count);
    for (auto& v : x) {
        switch (scheme.distribution) {
            case Distribution::bernoulli: v = rng.sign(); break;
            case Distribution::gaussian: v = rng.normal(); break;
            case Distribution::unit: v = 1.0; break;
        }
    }
    return x;
}

// Smallest t with mean exp(x^2/t^2) <= 2, by bisection on the monotone
// log-mean-exp.
double subgaussian_norm_est(const std::vector<double>& samples) {
    double mx = 0.0;
    for (double v : samples) mx = std::max(mx, std::abs(v));
    if (mx == 0.0) return 0.0;
    auto log_mean = [&](double t) {
        double top = 0.0;
        for (double v : samples) top = std::max(top, v * v / (t * t));
        double s = 0.0;
        for (double v : samples) s += std::exp(v * v / (t * t) - top);
        return top + std::log(s / samples.size());
    };
    const double target = std::log(2.0);
    double hi = mx / std::sqrt(target);  // every term <= 2
    double lo = hi * 1e-3;
    while (log_mean(lo) <= target) lo *= 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_mean(mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace slab
