#include "spectral_lab/eigsearch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "spectral_lab/kernels.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/parallel.hpp"

namespace slab {

cplx ScanRegion::z_at(double x, double y) const {
    if (lambda_eps) {
        const cplx k(x, y);
        return k * k;
    }
    return {x, y};
}

cplx ScanRegion::node(int i, int j) const {
    const double x = nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0;
    const double y = ny > 1 ? y0 + (y1 - y0) * j / (ny - 1) : y0;
    return z_at(x, y);
}

namespace {

cplx upper_root(cplx z) {
    cplx k = std::sqrt(z);
    if (k.imag() < 0.0) k = -k;
    return k;
}

}  // namespace

Eigen::MatrixXcd nystrom_matrix(const GridFunction& V, cplx z, KernelRoute route) {
    const BoxGrid& g = V.grid;
    if (route == KernelRoute::automatic) route = g.d == 2 ? KernelRoute::periodic : KernelRoute::continuum;
    if (route == KernelRoute::periodic) return periodic_resolvent_matrix(V, z, false);
    if (g.d == 2) throw Error(Errc::unsupported_dimension, "no closed-form d=2 kernel for complex energies");
    if (z.imag() == 0.0 && z.real() >= 0.0) throw Error(Errc::singular_symbol, "z on the continuous spectrum");
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V[i] != 0.0) s.push_back(i);
    if (s.size() > kDenseColumnLimit) throw Error(Errc::size_overflow, "support too large to materialize");
    const cplx k = upper_root(z);
    const auto n = static_cast<Eigen::Index>(s.size());
    const double dx = g.dx, mu = g.cell_volume();
    const cplx diag = g.d == 1 ? (std::exp(cplx(0, 1) * k * (dx / 2)) - 1.0) / (k * k) : green_cell_average(3, k, dx) * mu;
    Eigen::MatrixXcd A(n, n);
    std::vector<Point> pos(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) pos[i] = position(g, s[i]);
    parallel_for(s.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            cplx w;
            if (i == j) {
                w = diag;
            } else if (g.d == 1) {
                // exact integral of i e^{ik|r|}/(2k) over |r| in [a, b]
                const double r = std::abs(pos[i][0] - pos[j][0]);
                const double a = r - dx / 2, b = r + dx / 2;
                const cplx I(0, 1);
                w = (std::exp(I * k * b) - std::exp(I * k * a)) / (2.0 * k * k);
            } else {
                w = green_function(3, k, dist(pos[i], pos[j], 3)) * mu;
            }
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w * V[s[j]];
        }
    });
    A += Eigen::MatrixXcd::Identity(n, n);
    return A;
}

double smallest_singular_value(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return 1.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_min_at(const GridFunction& V, cplx z, KernelRoute route) {
    return smallest_singular_value(nystrom_matrix(V, z, route));
}

namespace {

bool touches_positive_axis(const ScanRegion& r) {
    if (r.lambda_eps) return r.y0 <= 0.0 && r.y1 >= 0.0;
    return r.y0 <= 0.0 && r.y1 >= 0.0 && r.x1 >= 0.0;
}

}  // namespace

SpectralScan sigma_min_scan(const GridFunction& V, const ScanRegion& region, KernelRoute route) {
    if (region.nx < 3 || region.ny < 3) throw Error(Errc::precondition, "scan needs at least 3x3 nodes");
    if (!(region.x1 > region.x0) || !(region.y1 > region.y0)) throw Error(Errc::precondition, "empty scan region");
    if (region.lambda_eps && region.x0 <= 0.0) throw Error(Errc::precondition, "lambda must be positive");
    if (touches_positive_axis(region))
        throw Error(Errc::region_touches_axis, "scan region meets the continuous spectrum [0, inf)");
    SpectralScan scan;
    scan.region = region;
    const auto nx = static_cast<std::size_t>(region.nx), ny = static_cast<std::size_t>(region.ny);
    scan.sigma_min.assign(nx * ny, 0.0);
    bool any = false;
    for (const auto& v : V.values) any = any || v != 0.0;
    if (!any) {
        std::fill(scan.sigma_min.begin(), scan.sigma_min.end(), 1.0);
        return scan;
    }
    parallel_for(nx * ny, [&](std::size_t t) {
        const int i = static_cast<int>(t % nx), j = static_cast<int>(t / nx);
        scan.sigma_min[t] = sigma_min_at(V, region.node(i, j), route);
    });
    const double hx = (region.x1 - region.x0) / (region.nx - 1), hy = (region.y1 - region.y0) / (region.ny - 1);
    std::vector<std::pair<int, int>> minima;
    for (int j = 1; j + 1 < region.ny; ++j)
        for (int i = 1; i + 1 < region.nx; ++i) {
            const double c = scan.sigma_min[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)];
            bool strict = true;
            for (int dj = -1; dj <= 1 && strict; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (scan.sigma_min[static_cast<std::size_t>(j + dj) * nx + static_cast<std::size_t>(i + di)] <= c) {
                        strict = false;
                        break;
                    }
                }
            if (strict) minima.emplace_back(i, j);
        }
    std::vector<ScanCandidate> found(minima.size());
    parallel_for(minima.size(), [&](std::size_t t) {
        double x = region.x0 + hx * minima[t].first, y = region.y0 + hy * minima[t].second;
        double best = scan.sigma_min[static_cast<std::size_t>(minima[t].second) * nx + static_cast<std::size_t>(minima[t].first)];
        double sx = hx / 2, sy = hy / 2;
        for (int it = 0; it < 400 && (sx > 1e-9 * hx || sy > 1e-9 * hy); ++it) {
            bool moved = false;
            const double cand[4][2] = {{x + sx, y}, {x - sx, y}, {x, y + sy}, {x, y - sy}};
            for (const auto& c : cand) {
                if (c[0] <= region.x0 || c[0] >= region.x1 || c[1] <= region.y0 || c[1] >= region.y1) continue;
                const double v = sigma_min_at(V, region.z_at(c[0], c[1]), route);
                if (v < best) {
                    best = v;
                    x = c[0];
                    y = c[1];
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                sx /= 2;
                sy /= 2;
            }
        }
        found[t] = {region.z_at(x, y), best, x, y};
    });
    for (const auto& c : found) {
        if (!(c.sigma_min < kCandidateThreshold)) continue;
        bool dup = false;
        for (const auto& o : scan.candidates) dup = dup || std::abs(o.z - c.z) <= 1e-6 * (1.0 + std::abs(c.z));
        if (!dup) scan.candidates.push_back(c);
    }
    return scan;
}

Table SpectralScan::table(const std::string& name) const {
    Table t{name, {"re_z", "im_z", "sigma_min"}, {}};
    for (int j = 0; j < region.ny; ++j)
        for (int i = 0; i < region.nx; ++i) {
            const cplx z = region.node(i, j);
            t.add({z.real(), z.imag(), sigma_min[static_cast<std::size_t>(j * region.nx + i)]});
        }
    return t;
}

std::string SpectralScan::candidates_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : candidates)
        arr.push_back({{"re_z", c.z.real()}, {"im_z", c.z.imag()}, {"sigma_min", c.sigma_min}});
    return arr.dump(2) + "\n";
}

double BoundReport::violation_threshold() const { return rhs_norm > 0.0 ? lhs / rhs_norm : INFINITY; }
bool BoundReport::violated_at(double M) const { return lhs > M * rhs_norm; }

namespace {

void check_common(double lambda, double eps, double q, int d) {
    if (d < 1 || d > 3) throw Error(Errc::invalid_dimension, "d must be 1, 2 or 3");
    if (!(lambda > 0.0)) throw Error(Errc::precondition, "lambda must be positive");
    if (!(std::abs(eps) <= lambda / 10.0)) throw Error(Errc::precondition, "need |eps| <= lambda/10");
    if (!(q >= 1.0)) throw Error(Errc::precondition, "q must be >= 1");
}

double log_display(double lambda, double h, double q, int d, double log_arg, double log_pow) {
    return std::pow(lambda, 2.0 - d / q) / (std::pow(bracket(lambda * h), d / 2.0) * std::pow(std::log(log_arg), log_pow));
}

}  // namespace

double thm1_bound(double lambda, double eps, double h, double R, double q, int d) {
    check_common(lambda, eps, q, d);
    if (!(h > 0.0 && h < R)) throw Error(Errc::precondition, "need 0 < h < R");
    if (q > d + 1) throw Error(Errc::precondition, "need q <= d+1");
    return log_display(lambda, h, q, d, bracket(lambda * R), 3.5);
}

double thm2_bound(double lambda, double eps, double h, double q, int d, double delta) {
    check_common(lambda, eps, q, d);
    if (!(delta > 0.0)) throw Error(Errc::precondition, "delta must be positive");
    if (!(h > 0.0)) throw Error(Errc::precondition, "h must be positive");
    if (q > d + 1) throw Error(Errc::precondition, "need q <= d+1");
    return log_display(lambda, h, q, d, bracket(lambda * h), 2.0);
}

double thm3_bound(double lambda, double eps, double h, double q, int d) {
    check_common(lambda, eps, q, d);
    if (!(h > 0.0)) throw Error(Errc::precondition, "h must be positive");
    if (q == d + 1) throw Error(Errc::endpoint_q, "the strict bound needs q < d+1");
    if (q > d + 1) throw Error(Errc::q_out_of_range, "need q < d+1");
    return log_display(lambda, h, q, d, bracket(lambda * h), 2.0);
}

double weighted_lq_norm(const GridFunction& V, double lambda, double delta, double q) {
    GridFunction w = V;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0.0) w[i] *= std::pow(bracket(lambda * norm(position(V.grid, i), V.grid.d)), delta);
    return lp_norm(w, q);
}

BoundReport thm1_report(const GridFunction& V, double lambda, double eps, double h, double R, double q) {
    BoundReport r{BoundTheorem::thm1, lambda, eps, h, R, q, 0.0, V.grid.d};
    r.lhs = thm1_bound(lambda, eps, h, R, q, V.grid.d);
    r.rhs_norm = lp_norm(V, q);
    return r;
}

BoundReport thm2_report(const GridFunction& V, double lambda, double eps, double h, double q, double delta) {
    BoundReport r{BoundTheorem::thm2, lambda, eps, h, 0.0, q, delta, V.grid.d};
    r.lhs = thm2_bound(lambda, eps, h, q, V.grid.d, delta);
    r.rhs_norm = weighted_lq_norm(V, lambda, delta, q);
    return r;
}

BoundReport thm3_report(const GridFunction& V, double lambda, double eps, double h, double q, bool weak) {
    BoundReport r{BoundTheorem::thm3, lambda, eps, h, 0.0, q, 0.0, V.grid.d};
    r.lhs = thm3_bound(lambda, eps, h, q, V.grid.d);
    r.rhs_norm = weak ? lorentz_weak_norm(V, q) : lp_norm(V, q);
    return r;
}

double corollary_ratio(const std::vector<cplx>& eigs, const GridFunction& V, double q) {
    if (eigs.empty()) return 0.0;
    const double nq = std::pow(lp_norm(V, q), q);
    const int d = V.grid.d;
    double best = 0.0;
    for (const cplx z : eigs) {
        const cplx k = std::sqrt(z);
        const double lambda = std::abs(k.real()), eps = k.imag();
        if (!(std::abs(eps) <= lambda / 10.0)) throw Error(Errc::precondition, "eigenvalue outside |eps| <= lambda/10");
        best = std::max(best, std::pow(std::abs(z), q - d / 2.0) / nq);
    }
    return best;
}

double destruction_scale(double eps, double q, int d) {
    if (d < 1 || d > 3) throw Error(Errc::invalid_dimension, "d must be 1, 2 or 3");
    if (!(q > (d + 1) / 2.0 && q <= d + 1)) throw Error(Errc::q_out_of_range, "need (d+1)/2 < q <= d+1");
    if (!(eps > 0.0 && eps < 0.5)) throw Error(Errc::precondition, "need 0 < eps < 1/2");
    const double base = std::pow(eps, (d + 1) / (2.0 * q) - 1.0) * std::pow(std::log(1.0 / eps), -3.5);
    return std::pow(base, 2.0 / d);
}

}  // namespace slab
