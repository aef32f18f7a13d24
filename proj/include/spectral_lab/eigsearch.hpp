#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_lab/grid.hpp"
#include "spectral_lab/table_io.hpp"

namespace slab {

// Rectangle in the z-plane (x = Re z, y = Im z) or in (lambda, eps)
// coordinates with z = (lambda + i eps)^2. Nodes include the edges.
struct ScanRegion {
    bool lambda_eps = false;
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    int nx = 16, ny = 16;
    cplx z_at(double x, double y) const;
    cplx node(int i, int j) const;
};

// How R0(z) acts on supp V: the closed-form free kernel (d = 1, 3) with
// exact cell integrals near the diagonal, or the periodic FFT kernel of the box.
enum class KernelRoute { automatic, continuum, periodic };

struct ScanCandidate {
    cplx z;
    double sigma_min = 0.0;
    double x = 0.0, y = 0.0;  // location in region coordinates
};

struct SpectralScan {
    ScanRegion region;
    std::vector<double> sigma_min;  // row-major: j * nx + i
    std::vector<ScanCandidate> candidates;
    Table table(const std::string& name = "scan") const;  // re_z, im_z, sigma_min
    std::string candidates_json() const;
};

inline constexpr double kCandidateThreshold = 0.02;

// I + R0(z) V restricted to supp V (Nystrom discretization).
Eigen::MatrixXcd nystrom_matrix(const GridFunction& V, cplx z, KernelRoute route = KernelRoute::automatic);
double smallest_singular_value(const Eigen::MatrixXcd& A);
double sigma_min_at(const GridFunction& V, cplx z, KernelRoute route = KernelRoute::automatic);

// Rejects regions whose closed rectangle meets [0, inf) in the z-plane.
SpectralScan sigma_min_scan(const GridFunction& V, const ScanRegion& region,
                            KernelRoute route = KernelRoute::automatic);

enum class BoundTheorem { thm1, thm2, thm3, corollary };

struct BoundReport {
    BoundTheorem theorem = BoundTheorem::thm1;
    double lambda = 1.0, eps = 0.0, h = 0.0, R = 0.0, q = 1.0, delta = 0.0;
    int d = 1;
    double lhs = 0.0;
    double rhs_norm = 0.0;  // the norm multiplied by M
    // The display fails exactly for M < lhs / rhs_norm.
    double violation_threshold() const;
    bool violated_at(double M) const;
};

// <t> = 2 + |t| in all bound formulas.
double thm1_bound(double lambda, double eps, double h, double R, double q, int d);
double thm2_bound(double lambda, double eps, double h, double q, int d, double delta);
double thm3_bound(double lambda, double eps, double h, double q, int d);
// ||<lambda x>^delta V||_q on the grid.
double weighted_lq_norm(const GridFunction& V, double lambda, double delta, double q);

BoundReport thm1_report(const GridFunction& V, double lambda, double eps, double h, double R, double q);
BoundReport thm2_report(const GridFunction& V, double lambda, double eps, double h, double q, double delta);
// weak = true uses the Lorentz L^{q,inf} norm on the right.
BoundReport thm3_report(const GridFunction& V, double lambda, double eps, double h, double q, bool weak = false);

// sup over eigenvalues of |z|^{q - d/2} / ||V||_q^q (0 for an empty list).
double corollary_ratio(const std::vector<cplx>& eigs, const GridFunction& V, double q);

// [eps^{(d+1)/(2q) - 1} log(1/eps)^{-7/2}]^{2/d}
double destruction_scale(double eps, double q, int d);

}  // namespace slab
