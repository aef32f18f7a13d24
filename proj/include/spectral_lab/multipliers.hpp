#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spectral_lab/grid.hpp"

namespace slab {

// z = (lambda + i eps)^2 with |eps| <= lambda/10.
struct ComplexEnergy {
    double lambda = 1.0;
    double eps = 0.0;

    static ComplexEnergy make(double lambda, double eps);
    cplx z() const;
};

enum class SupportKind { all, ball, annulus };

struct MultiplierSpec {
    GridFunction symbol;  // frequency space
    double delta = std::numeric_limits<double>::quiet_NaN();
    // Support in the variable |2 pi xi|: ball r < r_outer, annulus r_inner < r < r_outer.
    SupportKind support = SupportKind::all;
    double r_inner = 0.0;
    double r_outer = std::numeric_limits<double>::infinity();
    double smoothing_scale = 0.0;  // 1/R, 0 when unsmoothed
    long branch_crossings = 0;     // lattice edges crossing the principal cut
};

// Smooth even profile: 1 on [0, 1], 0 on [2, inf).
double cutoff(double s);

// (|2 pi xi|^2 - z)^{-1}. Real z >= 0 hits the continuous spectrum: with
// regularization eps0 > 0 the energy is replaced by (sqrt(z) + i eps0)^2,
// otherwise singular-symbol.
MultiplierSpec resolvent_symbol(const ComplexEnergy& e, const BoxGrid& g, double eps0 = 0.0);
MultiplierSpec resolvent_symbol(cplx z, const BoxGrid& g, double eps0 = 0.0);

// chi(|2 pi xi|) m and (1 - chi) m, chi = 1 on r <= 3/2, 0 on r >= 2.
std::pair<MultiplierSpec, MultiplierSpec> lowhigh_split(const MultiplierSpec& m);

// gamma_R * m: the position kernel of m multiplied by cutoff(|x|/R).
MultiplierSpec smooth_symbol(const MultiplierSpec& m, double R);

// gamma_R * m for the boundary value m = (|2 pi xi|^2 - (lambda + i0)^2)^{-1},
// built from the closed-form outgoing kernel.
MultiplierSpec smoothed_boundary_resolvent(double lambda, double R, const BoxGrid& g);

// Principal square root of m_smoothed cut to the c-neighbourhood
// ||2 pi xi| - 1| < c of the unit sphere. Throws branch-ambiguity when the
// smoothed symbol winds around 0 on a lattice plaquette inside that band.
inline constexpr double kSphereBand = 0.25;
MultiplierSpec cdelta_sqrt(const MultiplierSpec& m_smoothed, double delta);

// max over the lattice of |C(xi)| (||2 pi xi|^2 - 1| + delta)^{1/2}.
double cdelta_constant(const MultiplierSpec& c);

// phi_R with phi_R supported in B(0, 1/R), hat phi_R >= 1 on B(0, R),
// hat phi_R even and nonnegative. Returns the symbol hat phi_R.
MultiplierSpec make_phi(double R, const BoxGrid& g);

struct SphereNet {
    int d = 2;
    double lambda = 1.0;
    double separation = 0.0;
    std::vector<Point> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const;
};

// 1/R-separated nodes on the sphere of radius lambda.
SphereNet sphere_net(double lambda, double R, int d);
double min_node_distance(const SphereNet& net);

// E g(x) = sum_nu w_nu e(x . nu) g_nu on every grid point.
GridFunction extension_apply(const SphereNet& net, const std::vector<cplx>& g, const BoxGrid& grid);

// S[x, nu] = e(nu . x).
Eigen::MatrixXcd discres_matrix(const SphereNet& net, const SeparatedSet& targets);

// Cap datum R^{(d-1)/4} eta(R (nu_1 - lambda), R^{1/2} nu') at the pole
// +lambda e_1, normalized to unit L^2(sigma) norm on the net.
std::vector<cplx> knapp_datum(const SphereNet& net, double R);

}  // namespace slab
