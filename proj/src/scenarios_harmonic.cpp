// Scenarios built on multipliers and extension operators.
#include <algorithm>
#include <bit>
#include <cmath>

#include "spectral_lab/experiments.hpp"
#include "spectral_lab/kernels.hpp"
#include "spectral_lab/opnorm.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/potentials.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

namespace {

Json grid_json(const BoxGrid& g) { return {{"d", g.d}, {"L", g.L}, {"N", g.N}, {"dx", g.dx}}; }

double sup_abs(const GridFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

[[noreturn]] void bad_config(const std::string& msg) { throw Error(Errc::config, msg); }

}  // namespace

KnappReport run_knapp_saturation(const Json& p) {
    KnappReport rep;
    rep.qs = param_nums(p, "q_list");
    rep.Rs = param_nums(p, "R_list");
    const double h = p["h"].get<double>();
    const int n_mc = p["n_mc"].get<int>();
    const bool smooth = p["smooth"].get<bool>();
    const double oversample = p["net_oversample"].get<double>();
    const Distribution dist = parse_distribution(p["distribution"].get<std::string>());
    const std::uint64_t seed = param_seed(p);
    for (double q : rep.qs)
        if (q != 1.5 && q != 2.0 && q != 3.0) bad_config("q_list entries must be 1.5, 2 or 3");
    if (rep.Rs.size() < 4) bad_config("R_list needs at least 4 points");
    const double r = positive_kernel_radius(2);
    if (!(2.0 * h < r)) bad_config("need 2h below the positive-kernel radius " + format_double(r));

    const std::size_t nq = rep.qs.size(), nR = rep.Rs.size();
    std::vector<std::vector<std::vector<double>>> norm2(nq, std::vector<std::vector<double>>(nR));
    std::vector<std::vector<double>> pairing2(nq, std::vector<double>(nR, 0.0));
    Table samples{"samples", {"q", "R", "sample", "norm2", "pairing2"}, {}};
    Json grids = Json::array();

    for (std::size_t ri = 0; ri < nR; ++ri) {
        const double R = rep.Rs[ri];
        const int N = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::ceil((2.0 * R + 8.0) / h))));
        const BoxGrid g = make_grid(2, N * h, N);
        grids.push_back(grid_json(g));
        const SphereNet net = sphere_net(1.0, oversample * R, 2);
        const GridFunction V0 = knapp_tube(R, rep.qs[0], g, smooth);
        std::size_t peak = 0;
        for (std::size_t i = 0; i < V0.size(); ++i)
            if (std::abs(V0[i]) > std::abs(V0[peak])) peak = i;
        std::vector<double> scale(nq);
        for (std::size_t qi = 0; qi < nq; ++qi) scale[qi] = std::abs(knapp_tube(R, rep.qs[qi], g, smooth)[peak] / V0[peak]);

        const std::vector<cplx> datum = knapp_datum(net, R);
        Eigen::VectorXcd u(static_cast<Eigen::Index>(net.size()));
        for (std::size_t k = 0; k < net.size(); ++k) u(static_cast<Eigen::Index>(k)) = std::sqrt(net.weights[k]) * datum[k];

        std::vector<double> nrm(static_cast<std::size_t>(n_mc)), pair(static_cast<std::size_t>(n_mc));
        parallel_for(static_cast<std::size_t>(n_mc), [&](std::size_t s) {
            const RandomizationScheme scheme{h, dist, derive_seed(seed, (static_cast<std::uint64_t>(ri) << 32) | s)};
            const RandomPotential rp = randomize(V0, scheme);
            const Eigen::MatrixXcd T = extension_sandwich(rp.realized, net, net);
            nrm[s] = power_norm(MatrixMap(T), 1e-10, 20000, scheme.seed).value;
            pair[s] = std::abs(u.dot(T * u));
        });
        for (std::size_t qi = 0; qi < nq; ++qi) {
            const double f2 = scale[qi] * scale[qi];
            double acc = 0.0;
            for (int s = 0; s < n_mc; ++s) {
                const double n2 = nrm[static_cast<std::size_t>(s)] * nrm[static_cast<std::size_t>(s)] * f2;
                const double p2 = pair[static_cast<std::size_t>(s)] * pair[static_cast<std::size_t>(s)] * f2;
                norm2[qi][ri].push_back(n2);
                acc += p2;
                samples.add({rep.qs[qi], R, static_cast<long long>(s), n2, p2});
            }
            pairing2[qi][ri] = acc / n_mc;
        }
    }

    Table means{"means", {"q", "R", "mean_norm2", "mean_pairing2"}, {}};
    Table fits{"fits", {"q", "expected_slope", "slope", "intercept", "r2", "ci_lo", "ci_hi"}, {}};
    Json summary = Json::array();
    for (std::size_t qi = 0; qi < nq; ++qi) {
        std::vector<double> m(nR);
        for (std::size_t ri = 0; ri < nR; ++ri) {
            m[ri] = mean(norm2[qi][ri]);
            means.add({rep.qs[qi], rep.Rs[ri], m[ri], pairing2[qi][ri]});
        }
        const ScalingFit f = loglog_fit(rep.Rs, m);
        const Interval ci = bootstrap_slope_ci(rep.Rs, norm2[qi], p["bootstrap"].get<int>(), p["level"].get<double>(),
                                               derive_seed(seed, 0xB007ULL + qi));
        const double expected = 1.0 - 3.0 / rep.qs[qi];
        rep.fits.push_back(f);
        rep.cis.push_back(ci);
        rep.expected.push_back(expected);
        fits.add({rep.qs[qi], expected, f.slope, f.intercept, f.r2, ci.lo, ci.hi});
        summary.push_back({{"q", rep.qs[qi]}, {"expected_slope", expected}, {"slope", f.slope}, {"r2", f.r2},
                           {"ci", {ci.lo, ci.hi}}});
    }
    rep.out.tables = {samples, means, fits};
    rep.out.summary = {{"fits", summary}, {"positive_kernel_radius", r}};
    rep.out.grid = {{"per_R", grids}};
    return rep;
}

SteinTomasReport run_stein_tomas_uniformity(const Json& p) {
    SteinTomasReport rep;
    rep.Rs = param_nums(p, "R_list");
    rep.p_primes = param_nums(p, "p_list");
    const double lambda = p["lambda"].get<double>();
    const int n_random = p["n_random"].get<int>(), maxit = p["maxit"].get<int>();
    const std::uint64_t seed = param_seed(p);
    const std::size_t nR = rep.Rs.size(), np = rep.p_primes.size();
    rep.norms.assign(np + 1, std::vector<double>(nR, 0.0));
    std::vector<double> nodes(nR), targets(nR);
    std::vector<Eigen::MatrixXcd> mats(nR);
    std::vector<std::vector<Eigen::VectorXcd>> starts(nR);
    for (std::size_t ri = 0; ri < nR; ++ri) {
        const SphereNet net = sphere_net(lambda, rep.Rs[ri], 2);
        const SeparatedSet tg = lattice_ball(2, rep.Rs[ri]);
        mats[ri] = discres_matrix(net, tg);
        nodes[ri] = static_cast<double>(net.size());
        targets[ri] = static_cast<double>(tg.points.size());
        const auto n = static_cast<Eigen::Index>(net.size());
        starts[ri].push_back(Eigen::VectorXcd::Ones(n));
        CounterRng rng(derive_seed(seed, ri));
        for (int s = 0; s < n_random; ++s) {
            Eigen::VectorXcd v(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const double re = rng.normal();
                v(j) = cplx(re, rng.normal());
            }
            starts[ri].push_back(v);
        }
        // caps: windows of about sqrt(n)/2 nodes at four positions
        const Eigen::Index w = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::sqrt(double(n)) / 2));
        for (int c = 0; c < 4; ++c) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
            const Eigen::Index centre = c * n / 4;
            for (Eigen::Index j = -w; j <= w; ++j) v(((centre + j) % n + n) % n) = 1.0;
            starts[ri].push_back(v);
        }
    }
    parallel_for(nR * np, [&](std::size_t t) {
        const std::size_t ri = t % nR, pi = t / nR;
        rep.norms[pi][ri] = lp_operator_norm(mats[ri], rep.p_primes[pi], starts[ri], maxit) / std::sqrt(nodes[ri]);
    });
    for (std::size_t ri = 0; ri < nR; ++ri)
        rep.norms[np][ri] = mats[ri].rowwise().norm().maxCoeff() / std::sqrt(nodes[ri]);
    rep.p_primes.push_back(INFINITY);

    Table t{"norms", {"p_prime", "R", "nodes", "targets", "norm_av", "discres"}, {}};
    Json growth = Json::object();
    for (std::size_t pi = 0; pi < rep.p_primes.size(); ++pi) {
        for (std::size_t ri = 0; ri < nR; ++ri) {
            const double av = rep.norms[pi][ri];
            // ||S||_{l2 -> l^p'} / R^{1/2}
            const double discres = av * std::sqrt(nodes[ri]) / std::sqrt(rep.Rs[ri]);
            t.add({std::isinf(rep.p_primes[pi]) ? std::string("inf") : format_double(rep.p_primes[pi]), rep.Rs[ri],
                   nodes[ri], targets[ri], av, discres});
        }
        rep.growth.push_back(rep.norms[pi].back() / rep.norms[pi].front());
        growth[std::isinf(rep.p_primes[pi]) ? "inf" : format_double(rep.p_primes[pi])] = rep.growth.back();
    }
    rep.out.tables = {t};
    rep.out.summary = {{"growth", growth}, {"lambda", lambda}};
    return rep;
}

SmoothingReport run_smoothing_scaling(const Json& p) {
    SmoothingReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double lambda = p["lambda"].get<double>();
    const auto Rs = param_nums(p, "R_list");
    std::vector<double> sups(Rs.size());
    parallel_for(Rs.size(), [&](std::size_t i) { sups[i] = sup_abs(smoothed_boundary_resolvent(lambda, Rs[i], g).symbol); });
    rep.fit = loglog_fit(Rs, sups);
    const double eb = p["eps_bounded"].get<double>();
    const MultiplierSpec m = resolvent_symbol(cplx(lambda, eb) * cplx(lambda, eb), g);
    const double s0 = sup_abs(m.symbol), s1 = sup_abs(smooth_symbol(m, Rs.front()).symbol);
    rep.bounded_change = std::abs(s1 - s0) / s0;
    Table t{"sup_norms", {"R", "sup_abs"}, {}};
    for (std::size_t i = 0; i < Rs.size(); ++i) t.add({Rs[i], sups[i]});
    rep.out.tables = {t, rep.fit.table("fit_points")};
    rep.out.summary = {{"slope", rep.fit.slope}, {"intercept", rep.fit.intercept}, {"r2", rep.fit.r2},
                       {"bounded_relative_change", rep.bounded_change}};
    rep.out.grid = grid_json(g);
    return rep;
}

SmoothingIdentityReport run_smoothing_identity(const Json& p) {
    SmoothingIdentityReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double R1 = p["R1"].get<double>(), R2 = p["R2"].get<double>(), Rok = p["R_ok"].get<double>();
    if (!(Rok > R1 + R2)) bad_config("R_ok must exceed R1 + R2");
    const double band = p["band"].get<double>();
    const MultiplierSpec m = resolvent_symbol(ComplexEnergy::make(p["lambda"].get<double>(), p["eps"].get<double>()), g);
    const MultiplierSpec m_ok = smooth_symbol(m, Rok);
    const MultiplierSpec m_bad = smooth_symbol(m, (R1 + R2) / 2.0);
    auto in_ball = [&](std::size_t i, double r) { return norm(position(g, i), 2) <= r; };
    auto rel_err = [&](const GridFunction& f, const MultiplierSpec& ms) {
        const GridFunction a = apply_symbol(m.symbol, f), b = apply_symbol(ms.symbol, f);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (in_ball(i, R1)) {
                num += std::norm(a[i] - b[i]);
                den += std::norm(a[i]);
            }
        return std::sqrt(num / den);
    };
    const int n_inputs = p["n_inputs"].get<int>();
    const std::uint64_t seed = param_seed(p);
    rep.errors_ok.assign(static_cast<std::size_t>(n_inputs), 0.0);
    parallel_for(rep.errors_ok.size(), [&](std::size_t k) {
        CounterRng rng(derive_seed(seed, k));
        GridFunction f(g);
        for (auto& v : f.values) {
            const double re = rng.normal();
            v = cplx(re, rng.normal());
        }
        GridFunction F = fft_forward(f);
        for (std::size_t i = 0; i < F.size(); ++i)
            if (norm(frequency(g, i), 2) > band) F[i] = 0.0;
        f = fft_inverse(F);
        for (std::size_t i = 0; i < f.size(); ++i)
            if (!in_ball(i, R2)) f[i] = 0.0;
        rep.errors_ok[k] = rel_err(f, m_ok);
    });
    GridFunction spike(g);
    spike[nearest_index(g, {R2, 0.0, 0.0})] = 1.0;
    rep.error_bad = rel_err(spike, m_bad);
    Table t{"errors", {"input", "R", "relative_error"}, {}};
    for (std::size_t k = 0; k < rep.errors_ok.size(); ++k) t.add({static_cast<long long>(k), Rok, rep.errors_ok[k]});
    t.add({std::string("adversarial"), (R1 + R2) / 2.0, rep.error_bad});
    rep.out.tables = {t};
    rep.out.summary = {{"max_error_ok", *std::max_element(rep.errors_ok.begin(), rep.errors_ok.end())},
                       {"error_violated", rep.error_bad}};
    rep.out.grid = grid_json(g);
    return rep;
}

MultiplierInvariantReport run_multiplier_invariant(const Json& p) {
    MultiplierInvariantReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    rep.deltas = param_nums(p, "deltas");
    const bool fol = p["foliation"].get<bool>();
    const std::size_t n = rep.deltas.size();
    rep.constants.assign(n, 0.0);
    rep.foliation.assign(n, 0.0);
    std::vector<MultiplierSpec> Cs(n);
    std::vector<long> crossings(n);
    parallel_for(n, [&](std::size_t i) {
        const double R = 1.0 / rep.deltas[i];
        Cs[i] = cdelta_sqrt(smoothed_boundary_resolvent(1.0, R, g), rep.deltas[i]);
        rep.constants[i] = cdelta_constant(Cs[i]);
        crossings[i] = Cs[i].branch_crossings;
    });
    rep.global_constant = *std::max_element(rep.constants.begin(), rep.constants.end());
    double A = 0.0;
    std::vector<double> raw(n, 0.0);
    if (fol) {
        std::map<CellIndex, cplx> unit{{CellIndex{0, 0, 0}, 1.0}};
        const GridFunction V = anderson_potential(unit, 1.0, g);
        const SphereNet net = sphere_net(1.0, 4.0, 2);
        A = extension_norm(V, net, net).value;
        parallel_for(n, [&](std::size_t i) {
            NormEstimate e;
            rep.foliation[i] = foliation_check(Cs[i], V, Cs[i], A, &e);
            raw[i] = e.value;
        });
    }
    Table t{"constants", {"delta", "R", "constant", "branch_crossings", "foliation_ratio", "foliation_norm"}, {}};
    for (std::size_t i = 0; i < n; ++i)
        t.add({rep.deltas[i], 1.0 / rep.deltas[i], rep.constants[i], static_cast<long long>(crossings[i]),
               rep.foliation[i], raw[i]});
    rep.out.tables = {t};
    rep.out.summary = {{"global_constant", rep.global_constant}, {"extension_constant", A}};
    if (fol) {
        const auto [lo, hi] = std::minmax_element(rep.foliation.begin(), rep.foliation.end());
        rep.out.summary["foliation_spread"] = *hi / *lo;
    }
    rep.out.grid = grid_json(g);
    return rep;
}

DyadicShellReport run_dyadic_shell_demo(const Json& p) {
    DyadicShellReport rep;
    const BoxGrid g = make_grid(2, p["L"].get<double>(), p["N"].get<int>());
    const double delta = p["delta"].get<double>(), s = p["s"].get<double>();
    const int k_max = p["k_max"].get<int>();
    for (int k = 0; k <= k_max; ++k) rep.shells.push_back(k);
    rep.norms.assign(rep.shells.size(), 0.0);
    parallel_for(rep.shells.size(), [&](std::size_t i) {
        const int k = rep.shells[i];
        const double lo = k == 0 ? 0.0 : std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
        GridFunction Vk(g);
        for (std::size_t j = 0; j < Vk.size(); ++j) {
            const double r = norm(position(g, j), 2);
            if (r >= lo && r < hi) Vk[j] = std::pow(bracket(r), -s);
        }
        const double R = std::ldexp(1.0, k + 1);
        const MultiplierSpec C = cdelta_sqrt(smoothed_boundary_resolvent(1.0, R, g), 1.0 / R);
        LinearOperatorChain chain;
        chain.then(MultiplierStage{C}).then(PointwiseStage{Vk}).then(MultiplierStage{C});
        rep.norms[i] = power_norm(chain, 1e-9, 3000, derive_seed(param_seed(p), i)).value;
    });
    double total = 0.0;
    for (std::size_t i = 0; i < rep.shells.size(); ++i) {
        rep.weighted.push_back(rep.norms[i] * std::pow(2.0, delta * rep.shells[i]));
        total += rep.norms[i];
    }
    rep.tail_fraction = rep.norms.back() / total;
    const auto [lo, hi] = std::minmax_element(rep.weighted.begin(), rep.weighted.end());
    rep.spread = *hi / *lo;
    Table t{"shells", {"k", "R", "norm", "weighted_norm", "partial_sum"}, {}};
    double partial = 0.0;
    for (std::size_t i = 0; i < rep.shells.size(); ++i) {
        partial += rep.norms[i];
        t.add({static_cast<long long>(rep.shells[i]), std::ldexp(1.0, rep.shells[i] + 1), rep.norms[i], rep.weighted[i],
               partial});
    }
    std::vector<double> ks(rep.shells.begin(), rep.shells.end());
    std::vector<double> lg;
    for (double v : rep.norms) lg.push_back(std::log2(v));
    rep.out.tables = {t};
    rep.out.summary = {{"tail_fraction", rep.tail_fraction}, {"weighted_spread", rep.spread},
                       {"expected_log2_slope", -delta}};
    if (ks.size() >= 2) rep.out.summary["log2_norm_slope"] = linear_fit(ks, lg).slope;
    rep.out.grid = grid_json(g);
    return rep;
}

BsijReport run_bsij_separation(const Json& p) {
    BsijReport rep;
    const BoxGrid g = make_grid(3, p["L"].get<double>(), p["N"].get<int>());
    const double q = p["q"].get<double>(), lambda = p["lambda"].get<double>();
    rep.gaps = param_nums(p, "gaps");
    rep.exponent = 1.0 - 4.0 / (2.0 * q);
    auto cube = [&](double x0) {
        GridFunction V(g);
        for (std::size_t i = 0; i < V.size(); ++i) {
            const Point x = position(g, i);
            if (x[0] >= x0 && x[0] < x0 + 1.0 && x[1] >= 0.0 && x[1] < 1.0 && x[2] >= 0.0 && x[2] < 1.0) V[i] = 1.0;
        }
        return V;
    };
    Table t{"norms", {"gap", "L_ab", "norm_power", "norm_dense", "bound", "ratio"}, {}};
    for (double gap : rep.gaps) {
        if (gap / 2.0 + 1.0 >= g.L / 2.0) throw Error(Errc::box_too_small, "separated cubes do not fit the box");
        const GridFunction Va = cube(-gap / 2.0 - 1.0), Vb = cube(gap / 2.0);
        const BsijResult r = bsij_norm(Va, Vb, q, gap, lambda);
        rep.norms.push_back(r.estimate.value);
        rep.dense_gap = std::max(rep.dense_gap, std::abs(r.estimate.value - r.dense_value) / r.dense_value);
        t.add({gap, gap, r.estimate.value, r.dense_value, r.bound, r.ratio});
    }
    // coincident supports: L_ab = 1 on the diagonal
    const GridFunction Vc = cube(0.0);
    const BsijResult rc = bsij_norm(Vc, Vc, q, 1.0, lambda);
    rep.dense_gap = std::max(rep.dense_gap, std::abs(rc.estimate.value - rc.dense_value) / rc.dense_value);
    t.add({0.0, 1.0, rc.estimate.value, rc.dense_value, rc.bound, rc.ratio});
    rep.fit = loglog_fit(rep.gaps, rep.norms);
    rep.out.tables = {t};
    rep.out.summary = {{"slope", rep.fit.slope}, {"exponent", rep.exponent}, {"max_dense_gap", rep.dense_gap}};
    rep.out.grid = grid_json(g);
    return rep;
}

void register_harmonic_scenarios(std::vector<Scenario>& out) {
    out.push_back({"knapp-saturation",
                   "mean ||E* V E||^2 for randomized Knapp tubes against R (d=2)",
                   {{nums_param("q_list", {1.5, 3.0}, 1.5, 3.0, "exponents q"),
                     nums_param("R_list", {8, 16, 32, 64}, 4, 256, "tube scales R"),
                     num_param("h", 0.125, 1.0 / 64, 0.25, "randomization scale (grid step)"),
                     int_param("n_mc", 50, 2, 100000, "samples per R"),
                     bool_param("smooth", true, "smooth tube profile"),
                     num_param("net_oversample", 2.0, 1.0, 8.0, "net separation 1/(oversample R)"),
                     str_param("distribution", "bernoulli-symmetric", {"bernoulli-symmetric", "gaussian-standard"}),
                     int_param("bootstrap", 2000, 10, 1000000, "bootstrap resamples"),
                     num_param("level", 0.95, 0.5, 0.999, "interval level"), seed_param()}},
                   [](const Json& p) { return run_knapp_saturation(p).out; }});
    out.push_back({"stein-tomas-uniformity",
                   "discrete extension norms l2av -> l^p' across R (d=2)",
                   {{nums_param("R_list", {8, 16, 32, 64}, 2, 256), num_param("lambda", 0.45, 0.05, 0.5, "circle radius"),
                     nums_param("p_list", {6, 4}, 2, 1e6, "exponents p'"), int_param("n_random", 6, 0, 1000),
                     int_param("maxit", 200, 1, 100000), seed_param()}},
                   [](const Json& p) { return run_stein_tomas_uniformity(p).out; }});
    out.push_back({"smoothing-scaling",
                   "sup of the smoothed boundary resolvent against R (d=2)",
                   {{num_param("L", 256, 8, 4096), int_param("N", 256, 8, 4096), num_param("lambda", 1.0, 0.1, 10),
                     nums_param("R_list", {8, 16, 32, 64}, 1, 1e6), num_param("eps_bounded", 0.5, 0.01, 10), seed_param()}},
                   [](const Json& p) { return run_smoothing_scaling(p).out; }});
    out.push_back({"smoothing-identity",
                   "ball-localized m(D) against its kernel-cut version for R above and below R1+R2 (d=2)",
                   {{num_param("L", 128, 8, 4096), int_param("N", 128, 8, 4096), num_param("R1", 8, 0.5, 1e6),
                     num_param("R2", 8, 0.5, 1e6), num_param("R_ok", 20, 1, 1e6), num_param("lambda", 1.0, 0.1, 10),
                     num_param("eps", 0.1, -1, 1), num_param("band", 1.0, 0.01, 1e3, "input frequency cut |xi|"),
                     int_param("n_inputs", 20, 1, 10000), seed_param()}},
                   [](const Json& p) { return run_smoothing_identity(p).out; }});
    out.push_back({"multiplier-invariant",
                   "pointwise C^(delta) bound constant and foliation ratios over delta (d=2)",
                   {{num_param("L", 256, 8, 4096), int_param("N", 256, 8, 4096),
                     nums_param("deltas", {1.0, 0.125, 0.015625}, 1e-6, 1.0), bool_param("foliation", true),
                     seed_param()}},
                   [](const Json& p) { return run_multiplier_invariant(p).out; }});
    out.push_back({"dyadic-shell",
                   "||C V_k C|| on dyadic shells of <x>^{-s} (d=2)",
                   {{num_param("L", 256, 8, 4096), int_param("N", 256, 8, 4096), num_param("delta", 0.5, 0.01, 4),
                     num_param("s", 1.5, 0, 10, "decay exponent"), int_param("k_max", 5, 0, 20), seed_param()}},
                   [](const Json& p) { return run_dyadic_shell_demo(p).out; }});
    out.push_back({"bsij-separation",
                   "||Va^{1/2} R0 |Vb|^{1/2}|| for unit cubes against their gap (d=3)",
                   {{num_param("L", 32, 4, 1024), int_param("N", 128, 8, 1024), num_param("q", 2.0, 1.0, 2.0),
                     num_param("lambda", 1.0, 0.1, 10), nums_param("gaps", {2, 4, 8, 16}, 0.25, 1e4), seed_param()}},
                   [](const Json& p) { return run_bsij_separation(p).out; }});
}

}  // namespace slab
