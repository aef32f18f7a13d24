#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "spectral_lab/multipliers.hpp"

namespace slab {

using Vec = std::vector<cplx>;

// A linear map between finite-dimensional spaces with weighted inner
// products <u, v> = sum_i w_i u_i conj(v_i). adjoint is with respect to
// those inner products.
class LinearMap {
public:
    virtual ~LinearMap() = default;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    virtual double in_weight(std::size_t i) const = 0;
    virtual double out_weight(std::size_t i) const = 0;
    virtual Vec apply(const Vec& x) const = 0;
    virtual Vec apply_adjoint(const Vec& y) const = 0;
};

// Plain matrix with unit weights.
class MatrixMap : public LinearMap {
public:
    explicit MatrixMap(Eigen::MatrixXcd m) : m_(std::move(m)) {}
    std::size_t rows() const override { return static_cast<std::size_t>(m_.rows()); }
    std::size_t cols() const override { return static_cast<std::size_t>(m_.cols()); }
    double in_weight(std::size_t) const override { return 1.0; }
    double out_weight(std::size_t) const override { return 1.0; }
    Vec apply(const Vec& x) const override;
    Vec apply_adjoint(const Vec& y) const override;
    const Eigen::MatrixXcd& matrix() const { return m_; }

private:
    Eigen::MatrixXcd m_;
};

struct MultiplierStage {
    MultiplierSpec spec;
};
struct PointwiseStage {
    GridFunction values;
};
// nodes -> grid: g |-> sum_nu w_nu e(x . nu) g_nu
struct ExtensionStage {
    SphereNet net;
    BoxGrid grid;
};
// grid -> nodes: f |-> dx^d sum_x e(-x . nu) f(x)
struct RestrictionStage {
    SphereNet net;
    BoxGrid grid;
};

using Stage = std::variant<MultiplierStage, PointwiseStage, ExtensionStage, RestrictionStage>;

// Stages apply in order: stages[0] acts first.
class LinearOperatorChain : public LinearMap {
public:
    LinearOperatorChain() = default;
    explicit LinearOperatorChain(std::vector<Stage> stages);

    // Appends and validates compatibility with the current codomain.
    LinearOperatorChain& then(Stage s);

    std::size_t rows() const override;
    std::size_t cols() const override;
    double in_weight(std::size_t i) const override;
    double out_weight(std::size_t i) const override;
    Vec apply(const Vec& x) const override;
    Vec apply_adjoint(const Vec& y) const override;

    const std::vector<Stage>& stages() const { return stages_; }

private:
    std::vector<Stage> stages_;
};

// apply for chains acting on grid functions.
GridFunction apply(const LinearOperatorChain& chain, const GridFunction& f);

enum class NormMethod { power, dense_svd };

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;
    NormMethod method = NormMethod::power;
    bool converged = true;
};

const char* method_name(NormMethod m);

inline constexpr int kPowerRestarts = 3;
inline constexpr std::size_t kDenseColumnLimit = 4096;

// Power iteration on A*A from kPowerRestarts seeded complex Gaussian
// starts; the largest estimate wins. Stops when the relative increment of
// the estimate is <= tol. Not converging sets converged = false.
NormEstimate power_norm(const LinearMap& A, double tol = 1e-10, int maxit = 2000, std::uint64_t seed = 0x5EED);

// W_out^{1/2} A W_in^{-1/2}: the map as an unweighted matrix.
Eigen::MatrixXcd materialize(const LinearMap& A);
NormEstimate dense_norm(const LinearMap& A);
double spectral_norm(const Eigen::MatrixXcd& M);

// sup ||S a||_p / ||a||_2 for p >= 2 by the nonlinear power method
// a <- S*(|Sa|^{p-2} Sa)/||.|| from each start (a local maximum, hence a
// lower bound). p = inf is exact: the largest row norm.
double lp_operator_norm(const Eigen::MatrixXcd& S, double p, const std::vector<Eigen::VectorXcd>& starts,
                        int maxit = 500, double tol = 1e-10);

// R0(z) V on the periodic grid, with m = resolvent_symbol(z).
struct SprReport {
    std::vector<int> ns;
    std::vector<double> values;  // ||(R0 V)^n||^{1/n}
    double estimate = 0.0;       // value at the largest n
    bool decreasing = true;      // monotone-trend diagnostic
    bool dense = true;           // supp-V block route (false: power iteration)
};

SprReport gelfand_spr(const GridFunction& V, cplx z, int n_max, double tol = 1e-10);

enum class BornVerdict { converged, diverged, inconclusive };
const char* verdict_name(BornVerdict v);

inline constexpr double kBornMargin = 0.05;
BornVerdict born_converges(const GridFunction& V, cplx z, int n_max, double margin = kBornMargin,
                           SprReport* report = nullptr);

// Dense matrices of I + R0(z)V: the full N^d system and its supp-V block.
Eigen::MatrixXcd periodic_resolvent_matrix(const GridFunction& V, cplx z, bool full);

// T[a, b] = sqrt(w'_a w_b) int V(x) e(x . (nu_b - nu'_a)) dx with V taken
// constant on each grid cell (exact cell integral). Direct summation for
// small supports, nonuniform FFT otherwise.
Eigen::MatrixXcd extension_sandwich(const GridFunction& V, const SphereNet& out, const SphereNet& in,
                                    double tol = 1e-10);

NormEstimate extension_norm(const GridFunction& V, const SphereNet& out, const SphereNet& in, double tol = 1e-10,
                            std::uint64_t seed = 0x5EED);

// ||C1 V C2|| / (A sqrt(log<1/delta1>) sqrt(log<1/delta2>)), <t> = 2 + |t|.
double foliation_check(const MultiplierSpec& C1, const GridFunction& V, const MultiplierSpec& C2, double A,
                       NormEstimate* raw = nullptr);

// Closed-form outgoing kernel for d in {1, 3}; k = sqrt(z), Im k >= 0.
cplx resolvent_kernel(int d, cplx k, double r);

struct BsijResult {
    NormEstimate estimate;
    double dense_value = 0.0;  // dense SVD oracle (0 when skipped)
    double bound = 0.0;        // L^{1-(d+1)/(2q)} ||Va||_q^{1/2} ||Vb||_q^{1/2}
    double ratio = 0.0;
};

// || Va^{1/2} R0(lambda^2 + i0) |Vb|^{1/2} || with V^{1/2} = V/|V|^{1/2},
// using the continuum kernel between grid points (cell mean on coincident
// points).
BsijResult bsij_norm(const GridFunction& Va, const GridFunction& Vb, double q, double L_ab, double lambda = 1.0);

}  // namespace slab
