// Monte-Carlo, covering and counting scenarios.
#include <algorithm>
#include <cmath>
#include <map>

#include "spectral_lab/experiments.hpp"
#include "spectral_lab/multipliers.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

namespace {

Json grid_json(const BoxGrid& g) { return {{"d", g.d}, {"L", g.L}, {"N", g.N}, {"dx", g.dx}}; }

// First m integer points of the plane ordered by distance to the origin.
SeparatedSet nearest_lattice_points(std::size_t m) {
    double R = std::sqrt(static_cast<double>(m) / 3.0) + 2.0;
    SeparatedSet s = lattice_ball(2, R);
    while (s.points.size() < m) s = lattice_ball(2, R *= 1.5);
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const Point& a, const Point& b) { return norm(a, 2) < norm(b, 2); });
    s.points.resize(m);
    return s;
}

Eigen::MatrixXcd averaged_discres(double lambda, double R, std::size_t m) {
    const SphereNet net = sphere_net(lambda, R, 2);
    return discres_matrix(net, nearest_lattice_points(m)) / std::sqrt(static_cast<double>(net.size()));
}

Eigen::VectorXcd random_unit(Eigen::Index n, std::uint64_t seed) {
    CounterRng rng(seed);
    Eigen::VectorXcd v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double re = rng.normal();
        v(j) = cplx(re, rng.normal());
    }
    return v / v.norm();
}

}  // namespace

TailReport run_tail_decay(const Json& p) {
    TailReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double h = p["h"].get<double>();
    const auto n = static_cast<std::size_t>(p["n_samples"].get<long long>());
    const std::uint64_t seed = param_seed(p);
    const Distribution dist = parse_distribution(p["distribution"].get<std::string>());
    const SphereNet net = sphere_net(1.0, p["net_R"].get<double>(), 2);
    std::map<CellIndex, cplx> unit{{CellIndex{0, 0, 0}, 1.0}};
    const GridFunction V = anderson_potential(unit, 1.0, g);
    (void)cells_per_block(g, h);
    const Sampler sampler = [&](std::uint64_t s) {
        const RandomPotential rp = randomize(V, RandomizationScheme{h, dist, s});
        return spectral_norm(extension_sandwich(rp.realized, net, net));
    };
    std::vector<double> Ms;
    const double m0 = p["M_min"].get<double>(), m1 = p["M_max"].get<double>(), dm = p["M_step"].get<double>();
    for (int k = 0; m0 + k * dm <= m1 + 1e-12; ++k) Ms.push_back(m0 + k * dm);
    const std::vector<double> all = draw_samples(sampler, 2 * n, seed);
    const std::vector<double> first(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    rep.curve = exceedance_from_samples(first, Ms, mean(first), "extension_norm");
    rep.curve_double = exceedance_from_samples(all, Ms, mean(all), "extension_norm");
    rep.fit = fit_tail(rep.curve);
    rep.fit_double = fit_tail(rep.curve_double);
    rep.c_change = std::abs(rep.fit_double.c - rep.fit.c) / std::abs(rep.fit.c);
    Table samples{"samples", {"sample", "norm"}, {}};
    for (std::size_t i = 0; i < all.size(); ++i) samples.add({static_cast<long long>(i), all[i]});
    rep.out.tables = {rep.curve.table("exceedance"), rep.curve_double.table("exceedance_double"), samples};
    rep.out.summary = {{"c", rep.fit.c},           {"r2", rep.fit.r2},
                       {"points", rep.fit.points}, {"c_double", rep.fit_double.c},
                       {"r2_double", rep.fit_double.r2}, {"c_relative_change", rep.c_change},
                       {"C", rep.curve.C},         {"regularized", rep.curve.regularized},
                       {"net_nodes", net.size()}};
    rep.out.grid = grid_json(g);
    return rep;
}

MaxScalingScenarioReport run_max_scaling(const Json& p) {
    MaxScalingScenarioReport rep;
    std::vector<std::size_t> Ns;
    for (const auto& v : p["N_list"]) Ns.push_back(v.get<std::size_t>());
    rep.report = max_scaling(Ns, parse_distribution(p["distribution"].get<std::string>()),
                             static_cast<std::size_t>(p["n_trials"].get<long long>()), param_seed(p));
    rep.out.tables = {rep.report.table("max_scaling")};
    rep.out.summary = {{"slope", rep.report.slope}, {"r2", rep.report.r2}, {"ratio_last", rep.report.ratio.back()}};
    return rep;
}

DualSudakovReport run_dual_sudakov(const Json& p) {
    DualSudakovReport rep;
    rep.eps_list = param_nums(p, "eps_list");
    std::sort(rep.eps_list.begin(), rep.eps_list.end());
    for (const auto& v : p["m_list"]) rep.ms.push_back(v.get<std::size_t>());
    const double lambda = p["lambda"].get<double>(), R = p["net_R"].get<double>();
    const auto n_probe = static_cast<std::size_t>(p["n_probe"].get<long long>());
    const std::uint64_t seed = param_seed(p);
    std::vector<CoveringReport> reps(rep.ms.size());
    // covering is single-threaded per instance, parallel across instances
    parallel_for(rep.ms.size(), [&](std::size_t i) {
        reps[i] = covering_sweep(averaged_discres(lambda, R, rep.ms[i]), rep.eps_list, n_probe, derive_seed(seed, i));
    });
    Table t{"covering", {"m", "eps", "N_raw", "N", "S_norm", "ratio"}, {}};
    for (std::size_t i = 0; i < rep.ms.size(); ++i) {
        rep.ratio.push_back(reps[i].sudakov_ratio());
        for (std::size_t e = 0; e < rep.eps_list.size(); ++e) {
            rep.fitted_constant = std::max(rep.fitted_constant, rep.ratio[i][e]);
            t.add({static_cast<long long>(rep.ms[i]), rep.eps_list[e], static_cast<long long>(reps[i].raw[e]),
                   static_cast<long long>(reps[i].N_eps[e]), reps[i].S_norm, rep.ratio[i][e]});
        }
    }
    rep.out.tables = {t};
    rep.out.summary = {{"fitted_constant", rep.fitted_constant},
                       {"net_nodes", sphere_net(lambda, R, 2).size()}};
    return rep;
}

ChainingReport run_chaining(const Json& p) {
    ChainingReport rep;
    rep.k_max = p["k_max"].get<int>();
    const auto m = static_cast<std::size_t>(p["m"].get<long long>());
    const auto n_vectors = static_cast<std::size_t>(p["n_vectors"].get<long long>());
    const double p_prime = p["p_prime"].get<double>();
    const std::uint64_t seed = param_seed(p);
    const Eigen::MatrixXcd S = averaged_discres(p["lambda"].get<double>(), p["net_R"].get<double>(), m);
    const auto img = probe_image(S, static_cast<std::size_t>(p["n_probe"].get<long long>()), seed);
    const NetHierarchy nets = build_nets(img, rep.k_max);
    const double tol = std::ldexp(1.0, -rep.k_max + 1);
    std::vector<ChainResult> res(n_vectors);
    parallel_for(n_vectors, [&](std::size_t i) {
        res[i] = chaining_decompose(S, random_unit(S.cols(), derive_seed(seed, 0xC4A1ULL + i)), nets, tol, p_prime);
    });
    Table t{"chain", {"vector", "k", "xi_inf", "xi_inf_scaled", "xi_p"}, {}};
    Table errs{"reconstruction", {"vector", "error", "bound", "fallbacks"}, {}};
    for (std::size_t i = 0; i < n_vectors; ++i) {
        for (std::size_t k = 0; k < res[i].xi.size(); ++k) {
            const double scaled = res[i].xi_inf[k] * std::ldexp(1.0, static_cast<int>(k));
            rep.fitted_constant = std::max(rep.fitted_constant, scaled);
            rep.max_xi_p = std::max(rep.max_xi_p, res[i].xi_p[k]);
            t.add({static_cast<long long>(i), static_cast<long long>(k), res[i].xi_inf[k], scaled, res[i].xi_p[k]});
        }
        rep.max_reconstruction_error = std::max(rep.max_reconstruction_error, res[i].reconstruction_error);
        errs.add({static_cast<long long>(i), res[i].reconstruction_error, tol, static_cast<long long>(res[i].fallbacks)});
    }
    Table sizes{"nets", {"k", "radius", "centers"}, {}};
    for (std::size_t k = 0; k < nets.radii.size(); ++k)
        sizes.add({static_cast<long long>(k), nets.radii[k], static_cast<long long>(nets.centers[k].size())});
    rep.out.tables = {t, errs, sizes};
    rep.out.summary = {{"max_reconstruction_error", rep.max_reconstruction_error},
                       {"bound", tol},
                       {"fitted_constant", rep.fitted_constant},
                       {"max_xi_p", rep.max_xi_p}};
    return rep;
}

GeomSeriesReport run_geom_series(const Json& p) {
    GeomSeriesReport rep;
    const int j_max = p["j_max"].get<int>(), k_max = p["k_max"].get<int>();
    for (int j = j_max; j >= 0; --j) rep.As.push_back(std::ldexp(1.0, -j));
    for (double a : param_nums(p, "A_extra")) rep.As.push_back(a);
    Table t{"geom_series", {"A", "brute_force", "bound", "ratio"}, {}};
    for (double A : rep.As) {
        rep.brute.push_back(geom_series_bruteforce(A, k_max));
        rep.bound.push_back(geom_series_bound(A));
        rep.ratio.push_back(rep.brute.back() / rep.bound.back());
        rep.fitted_constant = std::max(rep.fitted_constant, rep.ratio.back());
        t.add({A, rep.brute.back(), rep.bound.back(), rep.ratio.back()});
    }
    rep.out.tables = {t};
    rep.out.summary = {{"fitted_constant", rep.fitted_constant}};
    return rep;
}

SparseReport run_sparse_decomposition(const Json& p) {
    SparseReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double gamma = p["gamma"].get<double>();
    const int K = p["K"].get<int>(), i_max = p["i_max"].get<int>();
    const std::uint64_t seed = param_seed(p);
    Table t{"levels", {"i", "cells", "families", "max_balls", "max_radius", "families_ratio", "balls_ratio",
                       "radius_ratio", "partition_exact", "separation_ok"}, {}};
    for (int i = 0; i <= i_max; ++i) {
        const std::size_t n = std::size_t{1} << i;
        const int side = static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(n))));
        if (side / 2 + 1 >= g.L / 2.0) throw Error(Errc::box_too_small, "sparse level does not fit the box");
        CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        std::map<CellIndex, cplx> cells;
        while (cells.size() < n) {
            const int a = static_cast<int>(rng.uniform() * side) - side / 2;
            const int b = static_cast<int>(rng.uniform() * side) - side / 2;
            const double re = rng.normal();
            cells.emplace(CellIndex{a, b, 0}, cplx(re, rng.normal()));
        }
        const GridFunction V = anderson_potential(cells, 1.0, g);
        const SparseLevel lvl = sparse_split(V, gamma, K);

        GridFunction sum(g);
        std::vector<int> hits(V.size(), 0);
        bool separated = true;
        for (const auto& f : lvl.families) {
            for (const auto& b : f.balls) {
                const GridFunction piece = sparse_piece(V, b);
                for (std::size_t k = 0; k < V.size(); ++k) sum[k] += piece[k];
                for (std::size_t k : b.points) ++hits[k];
            }
            for (std::size_t a = 0; a < f.balls.size(); ++a)
                for (std::size_t b = a + 1; b < f.balls.size(); ++b)
                    if (dist(f.balls[a].center, f.balls[b].center, 2) < f.separation) separated = false;
        }
        bool exact = true;
        for (std::size_t k = 0; k < V.size(); ++k) {
            if (sum[k] != V[k]) exact = false;
            if (V[k] != 0.0 && hits[k] != 1) exact = false;
        }
        rep.partition_exact = rep.partition_exact && exact;
        rep.separation_ok = rep.separation_ok && separated;
        const double kf = static_cast<double>(lvl.family_count()) / (K * std::pow(2.0, double(i) / K));
        const double nb = static_cast<double>(lvl.max_balls()) / std::ldexp(1.0, i);
        const double rr = lvl.max_radius() / std::pow(2.0, i * std::pow(gamma, K));
        rep.c_families = std::max(rep.c_families, kf);
        rep.c_balls = std::max(rep.c_balls, nb);
        rep.c_radius = std::max(rep.c_radius, rr);
        t.add({static_cast<long long>(i), static_cast<long long>(lvl.n_cells), static_cast<long long>(lvl.family_count()),
               static_cast<long long>(lvl.max_balls()), lvl.max_radius(), kf, nb, rr, exact, separated});
    }
    rep.out.tables = {t};
    rep.out.summary = {{"partition_exact", rep.partition_exact},
                       {"separation_ok", rep.separation_ok},
                       {"c_families", rep.c_families},
                       {"c_balls", rep.c_balls},
                       {"c_radius", rep.c_radius}};
    rep.out.grid = grid_json(g);
    return rep;
}

void register_random_scenarios(std::vector<Scenario>& out) {
    out.push_back({"tail-decay",
                   "exceedance of ||E* V_w E|| for a randomized unit-cell potential (d=2)",
                   {{num_param("L", 8, 4, 256), int_param("N", 64, 8, 1024), num_param("h", 0.125, 1.0 / 64, 1),
                     num_param("net_R", 8, 2, 64, "net separation 1/net_R on the unit circle"),
                     int_param("n_samples", 2000, 100, 10000000, "n; the scenario also draws 2n"),
                     num_param("M_min", 1.0, 0.0, 100), num_param("M_max", 3.0, 0.0, 100),
                     num_param("M_step", 0.05, 1e-4, 10),
                     str_param("distribution", "bernoulli-symmetric", {"bernoulli-symmetric", "gaussian-standard"}),
                     seed_param()}},
                   [](const Json& p) { return run_tail_decay(p).out; }});
    out.push_back({"max-scaling",
                   "E max |X_j| against sqrt(log N)",
                   {{ints_param("N_list", {10, 100, 1000, 10000}, 1, 1e8),
                     str_param("distribution", "gaussian-standard", {"bernoulli-symmetric", "gaussian-standard"}),
                     int_param("n_trials", 2000, 10, 1e8), seed_param()}},
                   [](const Json& p) { return run_max_scaling(p).out; }});
    out.push_back({"dual-sudakov",
                   "greedy covering numbers of averaged extension matrices over eps and m (d=2)",
                   {{nums_param("eps_list", {0.5, 0.25, 0.125}, 1e-3, 10), ints_param("m_list", {64, 256, 1024}, 2, 4096),
                     num_param("lambda", 0.45, 0.05, 0.5), num_param("net_R", 16, 2, 22, "keeps the net at <= 64 nodes"),
                     int_param("n_probe", 10000, 10000, 1e7), seed_param()}},
                   [](const Json& p) { return run_dual_sudakov(p).out; }});
    out.push_back({"chaining",
                   "dyadic chains S a = sum xi^(k) through nets of the probe image (d=2)",
                   {{int_param("m", 256, 2, 4096), int_param("k_max", 6, 0, 12), int_param("n_vectors", 20, 1, 10000),
                     num_param("lambda", 0.45, 0.05, 0.5), num_param("net_R", 16, 2, 22),
                     int_param("n_probe", 10000, 10000, 1e7), num_param("p_prime", 6.0, 1.0, 1e6), seed_param()}},
                   [](const Json& p) { return run_chaining(p).out; }});
    out.push_back({"geom-series",
                   "truncated double sum of min(2^{-k-k'}, A) against A (1 + log^2 A)",
                   {{int_param("j_max", 20, 0, 60), nums_param("A_extra", {2.0, 4.0}, 1e-30, 1e30),
                     int_param("k_max", 80, 60, 2000), seed_param()}},
                   [](const Json& p) { return run_geom_series(p).out; }});
    out.push_back({"sparse-decomposition",
                   "gamma-sparse splitting of 2^i random unit cells (d=2)",
                   {{num_param("L", 128, 16, 4096), int_param("N", 128, 16, 4096), num_param("gamma", 1.5, 1.0, 4.0),
                     int_param("K", 2, 1, 8), int_param("i_max", 8, 0, 12), seed_param()}},
                   [](const Json& p) { return run_sparse_decomposition(p).out; }});
}

}  // namespace slab
