#include "spectral_lab/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral_lab/kernels.hpp"
#include "spectral_lab/nufft.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

namespace slab {

Vec MatrixMap::apply(const Vec& x) const {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Vec y(rows());
    Eigen::Map<Eigen::VectorXcd>(y.data(), static_cast<Eigen::Index>(y.size())).noalias() = m_ * xv;
    return y;
}

Vec MatrixMap::apply_adjoint(const Vec& y) const {
    Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    Vec x(cols());
    Eigen::Map<Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size())).noalias() = m_.adjoint() * yv;
    return x;
}

namespace {

struct SpaceDesc {
    bool nodes = false;
    BoxGrid grid;
    const SphereNet* net = nullptr;
    std::size_t dim() const { return nodes ? net->size() : grid.size(); }
    double weight(std::size_t i) const { return nodes ? net->weights[i] : grid.cell_volume(); }
};

SpaceDesc stage_in(const Stage& s) {
    return std::visit(
        [](const auto& st) -> SpaceDesc {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, MultiplierStage>) return {false, st.spec.symbol.grid, nullptr};
            else if constexpr (std::is_same_v<T, PointwiseStage>) return {false, st.values.grid, nullptr};
            else if constexpr (std::is_same_v<T, ExtensionStage>) return {true, st.grid, &st.net};
            else return {false, st.grid, nullptr};
        },
        s);
}

SpaceDesc stage_out(const Stage& s) {
    return std::visit(
        [](const auto& st) -> SpaceDesc {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, MultiplierStage>) return {false, st.spec.symbol.grid, nullptr};
            else if constexpr (std::is_same_v<T, PointwiseStage>) return {false, st.values.grid, nullptr};
            else if constexpr (std::is_same_v<T, ExtensionStage>) return {false, st.grid, nullptr};
            else return {true, st.grid, &st.net};
        },
        s);
}

bool same_space(const SpaceDesc& a, const SpaceDesc& b) {
    if (a.nodes != b.nodes) return false;
    if (a.nodes) return a.net->nodes == b.net->nodes && a.net->weights == b.net->weights;
    return a.grid == b.grid;
}

GridFunction as_grid(const BoxGrid& g, const Vec& v) {
    GridFunction f(g);
    f.values = v;
    return f;
}

Vec restrict_to_nodes(const SphereNet& net, const BoxGrid& g, const Vec& f) {
    Vec out(net.size());
    const double mu = g.cell_volume();
    parallel_for(net.size(), [&](std::size_t k) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != 0.0) s += e2pi(-dot(position(g, i), net.nodes[k], g.d)) * f[i];
        out[k] = mu * s;
    });
    return out;
}

Vec apply_stage(const Stage& s, const Vec& x, bool adjoint) {
    return std::visit(
        [&](const auto& st) -> Vec {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, MultiplierStage>) {
                MultiplierSpec m = st.spec;
                if (adjoint)
                    for (auto& v : m.symbol.values) v = std::conj(v);
                return apply_symbol(m.symbol, as_grid(m.symbol.grid, x)).values;
            } else if constexpr (std::is_same_v<T, PointwiseStage>) {
                Vec y(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) y[i] = (adjoint ? std::conj(st.values[i]) : st.values[i]) * x[i];
                return y;
            } else if constexpr (std::is_same_v<T, ExtensionStage>) {
                if (adjoint) return restrict_to_nodes(st.net, st.grid, x);
                return extension_apply(st.net, x, st.grid).values;
            } else {
                if (adjoint) return extension_apply(st.net, x, st.grid).values;
                return restrict_to_nodes(st.net, st.grid, x);
            }
        },
        s);
}

}  // namespace

LinearOperatorChain::LinearOperatorChain(std::vector<Stage> stages) {
    for (auto& s : stages) then(std::move(s));
}

LinearOperatorChain& LinearOperatorChain::then(Stage s) {
    if (!stages_.empty()) {
        const SpaceDesc prev = stage_out(stages_.back());
        const SpaceDesc next = stage_in(s);
        if (!same_space(prev, next)) throw Error(Errc::incompatible_stage, "stage domain does not match previous codomain");
    }
    stages_.push_back(std::move(s));
    return *this;
}

std::size_t LinearOperatorChain::rows() const { return stage_out(stages_.back()).dim(); }
std::size_t LinearOperatorChain::cols() const { return stage_in(stages_.front()).dim(); }
double LinearOperatorChain::in_weight(std::size_t i) const { return stage_in(stages_.front()).weight(i); }
double LinearOperatorChain::out_weight(std::size_t i) const { return stage_out(stages_.back()).weight(i); }

Vec LinearOperatorChain::apply(const Vec& x) const {
    require(!stages_.empty(), "empty chain");
    Vec v = x;
    for (const auto& s : stages_) v = apply_stage(s, v, false);
    return v;
}

Vec LinearOperatorChain::apply_adjoint(const Vec& y) const {
    require(!stages_.empty(), "empty chain");
    Vec v = y;
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) v = apply_stage(*it, v, true);
    return v;
}

GridFunction apply(const LinearOperatorChain& chain, const GridFunction& f) {
    if (chain.stages().empty()) return f;
    const SpaceDesc in = stage_in(chain.stages().front());
    const SpaceDesc out = stage_out(chain.stages().back());
    if (in.nodes || out.nodes || !(in.grid == f.grid) || f.space != Space::position)
        throw Error(Errc::incompatible_stage, "chain does not act on this grid function");
    return as_grid(out.grid, chain.apply(f.values));
}

const char* method_name(NormMethod m) { return m == NormMethod::power ? "power" : "dense-svd"; }

namespace {

double wnorm(const Vec& v, const LinearMap& A, bool in) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (in ? A.in_weight(i) : A.out_weight(i)) * std::norm(v[i]);
    return std::sqrt(s);
}

}  // namespace

NormEstimate power_norm(const LinearMap& A, double tol, int maxit, std::uint64_t seed) {
    require(tol > 0.0, "tol must be positive");
    NormEstimate best;
    best.value = -1.0;
    for (int r = 0; r < kPowerRestarts; ++r) {
        CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        Vec x(A.cols());
        for (auto& v : x) {
            const double re = rng.normal();
            v = cplx(re, rng.normal());
        }
        double nx = wnorm(x, A, true);
        for (auto& v : x) v /= nx;
        NormEstimate est;
        est.converged = false;
        double prev = 0.0;
        for (int it = 1; it <= maxit; ++it) {
            const Vec y = A.apply(x);
            const double val = wnorm(y, A, false);
            est.iterations = it;
            if (val == 0.0) {
                est.value = 0.0;
                est.residual = 0.0;
                est.converged = true;
                break;
            }
            est.value = std::max(est.value, val);
            est.residual = std::abs(val - prev) / val;
            if (it > 1 && est.residual <= tol) {
                est.converged = true;
                break;
            }
            prev = val;
            x = A.apply_adjoint(y);
            nx = wnorm(x, A, true);
            if (nx == 0.0) {
                est.converged = true;
                break;
            }
            for (auto& v : x) v /= nx;
        }
        if (est.value > best.value) best = est;
    }
    best.method = NormMethod::power;
    return best;
}

Eigen::MatrixXcd materialize(const LinearMap& A) {
    const std::size_t n = A.cols(), m = A.rows();
    if (n > kDenseColumnLimit) throw Error(Errc::size_overflow, "operator too large to materialize");
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    parallel_for(n, [&](std::size_t j) {
        Vec x(n, 0.0);
        x[j] = 1.0 / std::sqrt(A.in_weight(j));
        const Vec y = A.apply(x);
        for (std::size_t i = 0; i < m; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sqrt(A.out_weight(i)) * y[i];
    });
    return M;
}

double spectral_norm(const Eigen::MatrixXcd& M) {
    if (M.size() == 0) return 0.0;
    if (std::min(M.rows(), M.cols()) <= 256) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
        return svd.singularValues()(0);
    }
    const Eigen::MatrixXcd G = M.rows() >= M.cols() ? Eigen::MatrixXcd(M.adjoint() * M) : Eigen::MatrixXcd(M * M.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

NormEstimate dense_norm(const LinearMap& A) {
    NormEstimate e;
    e.value = spectral_norm(materialize(A));
    e.method = NormMethod::dense_svd;
    return e;
}

double lp_operator_norm(const Eigen::MatrixXcd& S, double p, const std::vector<Eigen::VectorXcd>& starts, int maxit,
                        double tol) {
    require(p >= 2.0, "p must be >= 2");
    if (std::isinf(p)) return S.rowwise().norm().maxCoeff();
    if (p == 2.0) return spectral_norm(S);
    auto pnorm = [p](const Eigen::VectorXcd& y) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) s += std::pow(std::abs(y(i)), p);
        return std::pow(s, 1.0 / p);
    };
    double best = 0.0;
    for (const auto& a0 : starts) {
        if (a0.norm() == 0.0) continue;
        Eigen::VectorXcd a = a0 / a0.norm();
        double prev = 0.0;
        for (int it = 0; it < maxit; ++it) {
            const Eigen::VectorXcd y = S * a;
            const double val = pnorm(y);
            best = std::max(best, val);
            if (it > 0 && std::abs(val - prev) <= tol * val) break;
            prev = val;
            Eigen::VectorXcd w(y.size());
            for (Eigen::Index i = 0; i < y.size(); ++i) w(i) = std::pow(std::abs(y(i)), p - 2.0) * y(i);
            Eigen::VectorXcd g = S.adjoint() * w;
            const double gn = g.norm();
            if (gn == 0.0) break;
            a = g / gn;
        }
    }
    return best;
}

namespace {

std::vector<std::size_t> support_of(const GridFunction& V) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V[i] != 0.0) s.push_back(i);
    return s;
}

// Grid index of the periodic displacement x_a - x_b.
std::size_t displacement_index(const BoxGrid& g, std::size_t a, std::size_t b) {
    const Index3 ka = unflatten(g, a), kb = unflatten(g, b);
    Index3 k{0, 0, 0};
    for (int i = 0; i < g.d; ++i) k[i] = ((ka[i] - kb[i] + g.N / 2) % g.N + g.N) % g.N;
    return flatten(g, k);
}

// [k(x_i - x_j) dx^d] over the listed points, k the kernel of `symbol`.
Eigen::MatrixXcd kernel_block(const GridFunction& symbol, const std::vector<std::size_t>& pts) {
    const GridFunction k = fft_inverse(symbol);
    const double mu = symbol.grid.cell_volume();
    const auto n = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXcd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) K(i, j) = mu * k[displacement_index(symbol.grid, pts[i], pts[j])];
    return K;
}

}  // namespace

Eigen::MatrixXcd periodic_resolvent_matrix(const GridFunction& V, cplx z, bool full) {
    const MultiplierSpec m = resolvent_symbol(z, V.grid);
    std::vector<std::size_t> pts;
    if (full) {
        pts.resize(V.size());
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = i;
    } else {
        pts = support_of(V);
    }
    if (pts.size() > kDenseColumnLimit) throw Error(Errc::size_overflow, "system too large to materialize");
    Eigen::MatrixXcd K = kernel_block(m.symbol, pts);
    for (Eigen::Index j = 0; j < K.cols(); ++j) K.col(j) *= V[pts[static_cast<std::size_t>(j)]];
    K += Eigen::MatrixXcd::Identity(K.rows(), K.cols());
    return K;
}

SprReport gelfand_spr(const GridFunction& V, cplx z, int n_max, double tol) {
    require(n_max >= 4, "n_max must be >= 4");
    SprReport rep;
    const auto s = support_of(V);
    if (s.empty()) {
        for (int n = 2; n <= n_max; n *= 2) {
            rep.ns.push_back(n);
            rep.values.push_back(0.0);
        }
        return rep;
    }
    const MultiplierSpec m = resolvent_symbol(z, V.grid);
    if (s.size() <= kDenseColumnLimit) {
        // (R0 V)^n = R0|_{:,s} V_s (K_ss V_s)^{n-1}, so
        // ||(R0 V)^n||^2 = lambda_max(P* H P), P = V_s M^{n-1}, H = block of R0* R0.
        GridFunction m2 = m.symbol;
        for (auto& v : m2.values) v = std::norm(v);
        const Eigen::MatrixXcd H = kernel_block(m2, s);
        Eigen::MatrixXcd M = kernel_block(m.symbol, s);
        Eigen::VectorXcd vs(static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i) vs(static_cast<Eigen::Index>(i)) = V[s[i]];
        M = M * vs.asDiagonal();
        // Q = M^{n-1} kept as exp(logscale) * Q
        Eigen::MatrixXcd Q = M;  // n = 2
        double logscale = 0.0;
        auto renorm = [&](Eigen::MatrixXcd& X) {
            const double a = X.cwiseAbs().maxCoeff();
            if (a > 0.0 && std::isfinite(a)) {
                X /= a;
                logscale += std::log(a);
            }
        };
        renorm(Q);
        for (int n = 2; n <= n_max; n *= 2) {
            const Eigen::MatrixXcd P = vs.asDiagonal() * Q;
            const Eigen::MatrixXcd G = P.adjoint() * H * P;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (G + G.adjoint()), Eigen::EigenvaluesOnly);
            const double lam = std::max(0.0, es.eigenvalues().maxCoeff());
            const double lognorm = lam > 0.0 ? 0.5 * std::log(lam) + logscale : -std::numeric_limits<double>::infinity();
            if (lognorm > std::log(std::numeric_limits<double>::max()))
                throw Error(Errc::overflow, "||(R0 V)^n|| exceeds the double range");
            rep.ns.push_back(n);
            rep.values.push_back(lam > 0.0 ? std::exp(lognorm / n) : 0.0);
            if (2 * n > n_max) break;
            // M^{2n-1} = M^{n-1} M^{n-1} M
            const double ls = logscale;
            Q = Q * Q * M;
            logscale = 2.0 * ls;
            renorm(Q);
        }
    } else {
        rep.dense = false;
        for (int n = 2; n <= n_max; n *= 2) {
            LinearOperatorChain chain;
            for (int k = 0; k < n; ++k) chain.then(PointwiseStage{V}).then(MultiplierStage{m});
            const NormEstimate e = power_norm(chain, tol, 5000);
            if (!std::isfinite(e.value)) throw Error(Errc::overflow, "||(R0 V)^n|| exceeds the double range");
            rep.ns.push_back(n);
            rep.values.push_back(std::pow(e.value, 1.0 / n));
        }
    }
    rep.estimate = rep.values.back();
    for (std::size_t i = 1; i < rep.values.size(); ++i)
        if (rep.values[i] > rep.values[i - 1] * (1.0 + 1e-12)) rep.decreasing = false;
    return rep;
}

const char* verdict_name(BornVerdict v) {
    switch (v) {
        case BornVerdict::converged: return "converged";
        case BornVerdict::diverged: return "diverged";
        case BornVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

BornVerdict born_converges(const GridFunction& V, cplx z, int n_max, double margin, SprReport* report) {
    SprReport rep;
    try {
        rep = gelfand_spr(V, z, n_max);
    } catch (const Error& e) {
        if (e.code() != Errc::overflow) throw;
        if (report) *report = rep;
        return BornVerdict::diverged;
    }
    if (report) *report = rep;
    const auto& v = rep.values;
    const double a = v[v.size() - 1], b = v.size() > 1 ? v[v.size() - 2] : a;
    if (a <= 1.0 - margin && b <= 1.0 - margin) return BornVerdict::converged;
    if (a >= 1.0 + margin && b >= 1.0 + margin) return BornVerdict::diverged;
    return BornVerdict::inconclusive;
}

namespace {

// int over [x, x + dx)^d of e(-y . k) dy divided by e(-x . k).
cplx cell_factor(const Point& k, int d, double dx) {
    cplx f = 1.0;
    for (int i = 0; i < d; ++i) {
        const double u = kPi * dx * k[i];
        const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
        f *= dx * sinc * e2pi(-0.5 * dx * k[i]);
    }
    return f;
}

}  // namespace

Eigen::MatrixXcd extension_sandwich(const GridFunction& V, const SphereNet& out, const SphereNet& in, double tol) {
    const BoxGrid& g = V.grid;
    require(out.d == g.d && in.d == g.d, "net and grid dimensions differ");
    const auto s = support_of(V);
    const auto no = static_cast<Eigen::Index>(out.size()), ni = static_cast<Eigen::Index>(in.size());
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(no, ni);
    if (s.empty()) return T;
    const double work = static_cast<double>(s.size()) * static_cast<double>(no) * static_cast<double>(ni);
    if (work <= 4e7) {
        const auto P = static_cast<Eigen::Index>(s.size());
        Eigen::MatrixXcd Ain(P, ni), Aout(P, no);
        for (Eigen::Index p = 0; p < P; ++p) {
            const Point x = position(g, s[static_cast<std::size_t>(p)]);
            for (Eigen::Index b = 0; b < ni; ++b) Ain(p, b) = e2pi(dot(x, in.nodes[static_cast<std::size_t>(b)], g.d));
            for (Eigen::Index a = 0; a < no; ++a) Aout(p, a) = e2pi(dot(x, out.nodes[static_cast<std::size_t>(a)], g.d));
            Ain.row(p) *= V[s[static_cast<std::size_t>(p)]];
        }
        T.noalias() = Aout.adjoint() * Ain;
    } else {
        LatticeBlock blk;
        blk.d = g.d;
        Index3 lo{g.N, g.N, g.N}, hi{-1, -1, -1};
        for (std::size_t p : s) {
            const Index3 k = unflatten(g, p);
            for (int i = 0; i < g.d; ++i) {
                lo[i] = std::min(lo[i], k[i]);
                hi[i] = std::max(hi[i], k[i]);
            }
        }
        blk.dims.resize(g.d);
        std::size_t total = 1;
        for (int i = 0; i < g.d; ++i) {
            blk.dims[i] = hi[i] - lo[i] + 1;
            blk.origin[i] = (lo[i] - g.N / 2) * g.dx;
            total *= static_cast<std::size_t>(blk.dims[i]);
        }
        blk.dx = g.dx;
        blk.values.assign(total, 0.0);
        for (std::size_t p : s) {
            const Index3 k = unflatten(g, p);
            std::size_t flat = 0;
            for (int i = 0; i < g.d; ++i) flat = flat * blk.dims[i] + static_cast<std::size_t>(k[i] - lo[i]);
            blk.values[flat] = V[p];
        }
        std::vector<Point> ks;
        ks.reserve(static_cast<std::size_t>(no * ni));
        for (Eigen::Index a = 0; a < no; ++a)
            for (Eigen::Index b = 0; b < ni; ++b) {
                Point k{0.0, 0.0, 0.0};
                for (int i = 0; i < g.d; ++i) k[i] = out.nodes[a][i] - in.nodes[b][i];
                ks.push_back(k);
            }
        const auto F = nonuniform_ft(blk, ks, tol);
        for (Eigen::Index a = 0; a < no; ++a)
            for (Eigen::Index b = 0; b < ni; ++b) T(a, b) = F[static_cast<std::size_t>(a * ni + b)];
    }
    // cell-exact integration and the quadrature weights
    for (Eigen::Index a = 0; a < no; ++a)
        for (Eigen::Index b = 0; b < ni; ++b) {
            Point k{0.0, 0.0, 0.0};
            for (int i = 0; i < g.d; ++i) k[i] = out.nodes[a][i] - in.nodes[b][i];
            T(a, b) *= cell_factor(k, g.d, g.dx) * std::sqrt(out.weights[a] * in.weights[b]);
        }
    return T;
}

NormEstimate extension_norm(const GridFunction& V, const SphereNet& out, const SphereNet& in, double tol,
                            std::uint64_t seed) {
    MatrixMap T(extension_sandwich(V, out, in, std::min(tol, 1e-10)));
    return power_norm(T, tol, 20000, seed);
}

double foliation_check(const MultiplierSpec& C1, const GridFunction& V, const MultiplierSpec& C2, double A,
                       NormEstimate* raw) {
    require(A > 0.0, "extension constant must be positive");
    require(C1.delta > 0.0 && C2.delta > 0.0, "C1 and C2 must carry delta");
    LinearOperatorChain chain;
    chain.then(MultiplierStage{C2}).then(PointwiseStage{V}).then(MultiplierStage{C1});
    const NormEstimate e = power_norm(chain, 1e-9, 3000);
    if (raw) *raw = e;
    const double l1 = std::log(bracket(1.0 / C1.delta)), l2 = std::log(bracket(1.0 / C2.delta));
    return e.value / (A * std::sqrt(l1) * std::sqrt(l2));
}

cplx resolvent_kernel(int d, cplx k, double r) {
    if (d == 2) throw Error(Errc::unsupported_dimension, "d=2 kernel is a Hankel function");
    if (d != 1 && d != 3) throw Error(Errc::invalid_dimension, "d must be 1 or 3");
    require(r > 0.0, "separation must be nonzero");
    require(k.imag() >= 0.0, "k must lie in the closed upper half plane");
    return green_function(d, k, r);
}

BsijResult bsij_norm(const GridFunction& Va, const GridFunction& Vb, double q, double L_ab, double lambda) {
    const BoxGrid& g = Va.grid;
    require(Vb.grid == g, "potentials live on different grids");
    if (q > (g.d + 1) / 2.0) throw Error(Errc::q_out_of_range, "bsij bound needs q <= (d+1)/2");
    require(L_ab > 0.0, "separation must be positive");
    BsijResult res;
    const auto sa = support_of(Va), sb = support_of(Vb);
    res.bound = std::pow(L_ab, 1.0 - (g.d + 1) / (2.0 * q)) * std::sqrt(lp_norm(Va, q)) * std::sqrt(lp_norm(Vb, q));
    if (sa.empty() || sb.empty()) {
        res.estimate.converged = true;
        return res;
    }
    const double mu = g.cell_volume();
    const cplx self = green_cell_average(g.d, lambda, g.dx);
    Eigen::MatrixXcd B(static_cast<Eigen::Index>(sa.size()), static_cast<Eigen::Index>(sb.size()));
    parallel_for(sa.size(), [&](std::size_t i) {
        const Point x = position(g, sa[i]);
        const cplx a = Va[sa[i]] / std::sqrt(std::abs(Va[sa[i]]));
        for (std::size_t j = 0; j < sb.size(); ++j) {
            const double r = dist(x, position(g, sb[j]), g.d);
            const cplx G = r == 0.0 ? self : green_function(g.d, lambda, r);
            B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a * G * std::sqrt(std::abs(Vb[sb[j]])) * mu;
        }
    });
    MatrixMap M(B);
    res.estimate = power_norm(M, 1e-12, 20000);
    if (sb.size() <= kDenseColumnLimit && sa.size() <= kDenseColumnLimit) res.dense_value = spectral_norm(B);
    res.ratio = res.bound > 0.0 ? res.estimate.value / res.bound : 0.0;
    return res;
}

}  // namespace slab
