// Eigenvalue scenarios: Born criterion, bound violations, tube destruction.
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/tools/roots.hpp>

#include "spectral_lab/eigsearch.hpp"
#include "spectral_lab/experiments.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

namespace {

Json grid_json(const BoxGrid& g) { return {{"d", g.d}, {"L", g.L}, {"N", g.N}, {"dx", g.dx}}; }

// Even ground state of -u'' - c 1_[0,1] u: k tan(k/2) = sqrt(c - k^2), E = k^2 - c.
double square_well_ground_state(double c) {
    const double hi = std::min(std::sqrt(c), kPi) * (1.0 - 1e-12);
    auto f = [c](double k) { return k * std::tan(k / 2.0) - std::sqrt(std::max(0.0, c - k * k)); };
    std::uintmax_t it = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, 1e-12, hi, boost::math::tools::eps_tolerance<double>(50), it);
    const double k = 0.5 * (a + b);
    return k * k - c;
}

GridFunction well(const BoxGrid& g, double c) {
    return sample(g, [c](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? cplx(-c) : cplx(0.0); });
}

// Ground state of the scan: the candidate with the smallest real part.
double lowest_candidate(const SpectralScan& s) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const auto& c : s.candidates)
        if (std::isnan(best) || c.z.real() < best) best = c.z.real();
    return best;
}

double scan_minimum(const SpectralScan& s) {
    double m = *std::min_element(s.sigma_min.begin(), s.sigma_min.end());
    for (const auto& c : s.candidates) m = std::min(m, c.sigma_min);
    return m;
}

}  // namespace

BornReport run_born_criterion(const Json& p) {
    BornReport rep;
    const double c = p["well_depth"].get<double>();
    const int N = p["N"].get<int>();
    const double L = p["L"].get<double>();
    ScanRegion region{false,
                      p["re_min"].get<double>(),
                      p["re_max"].get<double>(),
                      p["im_min"].get<double>(),
                      p["im_max"].get<double>(),
                      p["nx"].get<int>(),
                      p["ny"].get<int>()};
    std::vector<cplx> zs;
    const auto zflat = param_nums(p, "z_list");
    if (zflat.size() % 2 != 0 || zflat.empty()) throw Error(Errc::config, "z_list holds re, im pairs");
    for (std::size_t i = 0; i < zflat.size(); i += 2) zs.emplace_back(zflat[i], zflat[i + 1]);
    const BoxGrid g = make_grid(1, L, N), g2 = make_grid(1, L, 2 * N);
    const SpectralScan scan = sigma_min_scan(well(g, c), region, KernelRoute::continuum);
    rep.well_oracle = square_well_ground_state(c);
    rep.well_eigenvalue = lowest_candidate(scan);
    if (std::isnan(rep.well_eigenvalue)) throw Error(Errc::no_convergence, "no eigenvalue candidate in the well scan");
    rep.well_rel_error = std::abs(rep.well_eigenvalue - rep.well_oracle) / std::abs(rep.well_oracle);
    rep.refined_eigenvalue = lowest_candidate(sigma_min_scan(well(g2, c), region, KernelRoute::continuum));
    rep.refinement_drift = std::abs(rep.refined_eigenvalue - rep.well_eigenvalue) / std::abs(rep.well_eigenvalue);

    // random instances on the periodic box
    const BoxGrid gr = make_grid(1, p["random_L"].get<double>(), p["random_N"].get<int>());
    const auto amps = param_nums(p, "amplitudes");
    const int n_pot = p["n_potentials"].get<int>(), n_max = p["n_max"].get<int>();
    const double h = p["h"].get<double>(), support = p["support"].get<double>();
    const std::uint64_t seed = param_seed(p);
    const GridFunction profile =
        sample(gr, [support](const Point& x) { return x[0] >= 0.0 && x[0] < support ? cplx(1.0, 0.5) : cplx(0.0); });
    const std::size_t total = amps.size() * static_cast<std::size_t>(n_pot) * zs.size();
    std::vector<BornVerdict> verdicts(total);
    std::vector<double> sig(total), spr(total);
    parallel_for(total, [&](std::size_t t) {
        const std::size_t zi = t % zs.size(), pi = (t / zs.size()) % static_cast<std::size_t>(n_pot),
                          ai = t / (zs.size() * static_cast<std::size_t>(n_pot));
        RandomPotential rp = randomize(profile, RandomizationScheme{h, Distribution::bernoulli, derive_seed(seed, pi)});
        for (auto& v : rp.realized.values) v *= amps[ai];
        SprReport r;
        verdicts[t] = born_converges(rp.realized, zs[zi], n_max, kBornMargin, &r);
        spr[t] = r.values.empty() ? std::numeric_limits<double>::infinity() : r.estimate;
        sig[t] = sigma_min_at(rp.realized, zs[zi], KernelRoute::periodic);
    });
    Table inst{"instances", {"amplitude", "potential", "re_z", "im_z", "verdict", "spr", "sigma_min"}, {}};
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t zi = t % zs.size(), pi = (t / zs.size()) % static_cast<std::size_t>(n_pot),
                          ai = t / (zs.size() * static_cast<std::size_t>(n_pot));
        ++rep.instances;
        if (verdicts[t] == BornVerdict::converged) {
            ++rep.converged;
            if (sig[t] <= p["sigma_floor"].get<double>()) ++rep.false_certificates;
        }
        inst.add({amps[ai], static_cast<long long>(pi), zs[zi].real(), zs[zi].imag(),
                  std::string(verdict_name(verdicts[t])), spr[t], sig[t]});
    }
    rep.out.tables = {scan.table("well_scan"), inst};
    rep.out.files = {{"well_candidates.json", scan.candidates_json()}};
    rep.out.summary = {{"well_eigenvalue", rep.well_eigenvalue},     {"well_oracle", rep.well_oracle},
                       {"well_relative_error", rep.well_rel_error}, {"refined_eigenvalue", rep.refined_eigenvalue},
                       {"refinement_drift", rep.refinement_drift},   {"instances", rep.instances},
                       {"converged", rep.converged},                 {"false_certificates", rep.false_certificates}};
    rep.out.grid = {{"well", grid_json(g)}, {"random", grid_json(gr)}};
    return rep;
}

EigenBoundReport run_eigen_bound_mc(const Json& p) {
    EigenBoundReport rep;
    const BoxGrid g = make_grid(1, p["L"].get<double>(), p["N"].get<int>());
    const double h = p["h"].get<double>(), R = p["R"].get<double>(), q = p["q"].get<double>();
    const auto amp = param_nums(p, "amplitude");
    if (amp.size() != 2) throw Error(Errc::config, "amplitude must be [re, im]");
    const cplx a(amp[0], amp[1]);
    const GridFunction profile =
        sample(g, [a](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? a : cplx(0.0); });
    rep.Ms = param_nums(p, "M_list");
    std::sort(rep.Ms.begin(), rep.Ms.end());
    rep.samples = static_cast<std::size_t>(p["n_samples"].get<long long>());
    const std::uint64_t seed = param_seed(p);
    const Distribution dist = parse_distribution(p["distribution"].get<std::string>());
    const int nx = p["nx"].get<int>(), ny = p["ny"].get<int>();
    const double l0 = p["lambda_min"].get<double>(), l1 = p["lambda_max"].get<double>();
    const double e0 = p["eps_min"].get<double>(), e1 = p["eps_max"].get<double>();
    const ScanRegion upper{true, l0, l1, e0, e1, nx, ny}, lower{true, l0, l1, -e1, -e0, nx, ny};

    struct Found {
        cplx z;
        double lambda, eps, threshold;
    };
    std::vector<std::vector<Found>> found(rep.samples);
    parallel_for(rep.samples, [&](std::size_t s) {
        const RandomPotential rp = randomize(profile, RandomizationScheme{h, dist, derive_seed(seed, s)});
        for (const ScanRegion* reg : {&upper, &lower}) {
            for (const auto& c : sigma_min_scan(rp.realized, *reg).candidates) {
                if (!(std::abs(c.y) <= c.x / 10.0)) continue;
                const BoundReport b = thm1_report(profile, c.x, c.y, h, R, q);
                found[s].push_back({c.z, c.x, c.y, b.violation_threshold()});
            }
        }
    });

    rep.c_hat = p["c_hat"].get<double>();
    if (rep.c_hat < 0.0) {
        Json tp = scenario_params("tail-decay", {{"n_samples", p["tail_samples"]}, {"seed", p["seed"]}});
        rep.c_hat = run_tail_decay(tp).fit.c;
    }
    Table eig{"eigenvalues", {"sample", "re_z", "im_z", "lambda", "eps", "violation_threshold"}, {}};
    for (std::size_t s = 0; s < rep.samples; ++s)
        for (const auto& f : found[s]) {
            ++rep.eigenvalues;
            eig.add({static_cast<long long>(s), f.z.real(), f.z.imag(), f.lambda, f.eps, f.threshold});
        }
    Table vt{"violations", {"M", "fraction", "tail_model"}, {}};
    for (double M : rep.Ms) {
        std::size_t bad = 0;
        for (const auto& fs : found)
            if (std::any_of(fs.begin(), fs.end(), [M](const Found& f) { return f.threshold > M; })) ++bad;
        rep.fractions.push_back(static_cast<double>(bad) / static_cast<double>(rep.samples));
        vt.add({M, rep.fractions.back(), std::exp(-rep.c_hat * M * M)});
    }
    rep.out.tables = {vt, eig};
    rep.out.summary = {{"c_hat", rep.c_hat},
                       {"samples", rep.samples},
                       {"eigenvalues", rep.eigenvalues},
                       {"fraction_at_max_M", rep.fractions.back()}};
    rep.out.grid = grid_json(g);
    return rep;
}

DestructionReport run_counterexample_destruction(const Json& p) {
    DestructionReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double q = p["q"].get<double>(), coarse = p["coarse_factor"].get<double>();
    rep.eps_list = param_nums(p, "eps_list");
    std::sort(rep.eps_list.begin(), rep.eps_list.end(), std::greater<>());
    const int n_samples = p["n_samples"].get<int>(), nx = p["nx"].get<int>(), ny = p["ny"].get<int>();
    const std::uint64_t seed = param_seed(p);
    const double lw = p["lambda_halfwidth"].get<double>();

    // h is snapped down to a multiple of dx, and at least dx
    auto snap = [&](double h) { return std::max(1.0, std::floor(h / g.dx + 1e-9)) * g.dx; };
    auto randomized_median = [&](const GridFunction& V, const ScanRegion& reg, double h, std::uint64_t base) {
        std::vector<double> mins(static_cast<std::size_t>(n_samples));
        parallel_for(mins.size(), [&](std::size_t s) {
            const RandomPotential rp = randomize(V, RandomizationScheme{h, Distribution::bernoulli, derive_seed(base, s)});
            mins[s] = scan_minimum(sigma_min_scan(rp.realized, reg));
        });
        return median(mins);
    };

    Table t{"destruction", {"eps", "h", "deterministic_min", "randomized_median", "ratio"}, {}};
    for (std::size_t i = 0; i < rep.eps_list.size(); ++i) {
        const double eps = rep.eps_list[i];
        GridFunction V = tube_potential(eps, g);
        for (auto& v : V.values) v *= cplx(0.0, 1.0);
        const ScanRegion reg{true, 1.0 - lw, 1.0 + lw, eps / 4.0, 2.0 * eps, nx, ny};
        const double h = snap(destruction_scale(eps, q, 2));
        rep.h_used.push_back(h);
        rep.deterministic_min.push_back(scan_minimum(sigma_min_scan(V, reg)));
        rep.randomized_median.push_back(randomized_median(V, reg, h, derive_seed(seed, i << 16)));
        rep.ratio.push_back(rep.randomized_median.back() / rep.deterministic_min.back());
        t.add({eps, h, rep.deterministic_min.back(), rep.randomized_median.back(), rep.ratio.back()});
    }
    // finest eps with h coarse_factor times larger
    {
        const double eps = rep.eps_list.back();
        GridFunction V = tube_potential(eps, g);
        for (auto& v : V.values) v *= cplx(0.0, 1.0);
        const ScanRegion reg{true, 1.0 - lw, 1.0 + lw, eps / 4.0, 2.0 * eps, nx, ny};
        const double h = snap(coarse * rep.h_used.back());
        const double med = randomized_median(V, reg, h, derive_seed(seed, 0xC0A5EULL));
        rep.ratio_coarse_h = med / rep.deterministic_min.back();
        t.add({eps, h, rep.deterministic_min.back(), med, rep.ratio_coarse_h});
    }
    rep.out.tables = {t};
    rep.out.summary = {{"ratio_finest", rep.ratio.back()}, {"ratio_coarse_h", rep.ratio_coarse_h},
                       {"destroyed", rep.ratio.back() >= p["ratio_threshold"].get<double>()}};
    rep.out.grid = grid_json(g);
    return rep;
}

void register_spectral_scenarios(std::vector<Scenario>& out) {
    out.push_back(
        {"born-criterion",
         "square-well eigenvalue from sigma_min scans, and Born certificates against dense sigma_min (d=1)",
         {{num_param("well_depth", 10, 0.1, 1e4), num_param("L", 8, 2, 1024), int_param("N", 512, 16, 8192),
           num_param("re_min", -9.9, -1e4, 0), num_param("re_max", -0.1, -1e4, 0), num_param("im_min", -0.3, -1e3, 1e3),
           num_param("im_max", 0.3, -1e3, 1e3), int_param("nx", 99, 3, 10000), int_param("ny", 7, 3, 10000),
           num_param("random_L", 8, 2, 1024), int_param("random_N", 64, 8, 4096),
           nums_param("amplitudes", {0.25, 0.5, 1, 2, 4, 8, 16, 32}, 0, 1e6), int_param("n_potentials", 5, 1, 10000),
           nums_param("z_list", {-1.0, 0.5, -0.25, 0.1, 1.0, 0.5, 4.0, 1.0, -4.0, 0.2}, -1e6, 1e6,
                      "energies as re, im pairs"),
           num_param("h", 0.5, 1.0 / 64, 8), num_param("support", 2, 0.125, 64), int_param("n_max", 12, 2, 200),
           num_param("sigma_floor", 0.05, 0, 1), seed_param()}},
         [](const Json& p) { return run_born_criterion(p).out; }});
    out.push_back({"eigen-bound-mc",
                   "fraction of samples whose eigenvalues violate the bound display at level M (d=1)",
                   {{num_param("L", 8, 2, 1024), int_param("N", 128, 8, 8192), num_param("h", 0.25, 1.0 / 256, 1),
                     num_param("R", 1, 1e-3, 1e6), num_param("q", 1.5, 1, 2),
                     nums_param("amplitude", {-0.1, 1.0}, -1e6, 1e6, "[re, im] of the unit-cell profile"),
                     nums_param("M_list", {0.125, 0.25, 0.5, 1, 2, 4, 8}, 1e-6, 1e6),
                     int_param("n_samples", 500, 1, 1e7),
                     str_param("distribution", "bernoulli-symmetric", {"bernoulli-symmetric", "gaussian-standard", "unit"}),
                     int_param("nx", 40, 3, 10000), int_param("ny", 12, 3, 10000), num_param("lambda_min", 0.02, 1e-6, 1e3),
                     num_param("lambda_max", 1.5, 1e-6, 1e3), num_param("eps_min", 0.002, 1e-9, 1e3),
                     num_param("eps_max", 0.15, 1e-9, 1e3),
                     num_param("c_hat", -1, -1, 1e6, "tail constant; negative runs tail-decay to fit it"),
                     int_param("tail_samples", 500, 100, 1e7), seed_param()}},
                   [](const Json& p) { return run_eigen_bound_mc(p).out; }});
    out.push_back({"counterexample-destruction",
                   "sigma_min minima of the imaginary tube, deterministic against randomized (d=2)",
                   {{num_param("L", 64, 8, 1024), int_param("N", 128, 16, 1024), num_param("q", 3, 1.5, 3),
                     nums_param("eps_list", {0.25, 0.125}, 1e-4, 0.5), int_param("n_samples", 20, 1, 1e6),
                     int_param("nx", 9, 3, 1000), int_param("ny", 7, 3, 1000), num_param("lambda_halfwidth", 0.25, 0.01, 0.99),
                     num_param("coarse_factor", 4, 1, 1e3), num_param("ratio_threshold", 2, 0, 1e6), seed_param()}},
                   [](const Json& p) { return run_counterexample_destruction(p).out; }});
}

}  // namespace slab
