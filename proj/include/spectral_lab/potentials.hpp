#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spectral_lab/grid.hpp"

namespace slab {

// unit forces omega == 1 (the deterministic control).
enum class Distribution { bernoulli, gaussian, unit };

const char* distribution_name(Distribution d);
Distribution parse_distribution(const std::string& s);

struct RandomizationScheme {
    double h = 1.0;
    Distribution distribution = Distribution::bernoulli;
    std::uint64_t seed = 0;
};

using CellIndex = Index3;

struct RandomPotential {
    GridFunction profile;
    RandomizationScheme scheme;
    // Cells meeting the profile's support, in lexicographic order.
    std::vector<std::pair<CellIndex, double>> omega;
    GridFunction realized;
};

// omega_j for the cell j + h[0,1)^d; depends only on (seed, j).
double cell_weight(const RandomizationScheme& s, const CellIndex& j);

// h/dx as an integer, or misaligned-scale.
int cells_per_block(const BoxGrid& g, double h);
CellIndex cell_of(const BoxGrid& g, std::size_t flat, int per_block);

// V(x) = sum_j v_j 1_Q((x - j h)/h), Q = [0,1)^d.
GridFunction anderson_potential(const std::map<CellIndex, cplx>& coeffs, double h, const BoxGrid& g);

RandomPotential randomize(const GridFunction& profile, const RandomizationScheme& scheme);

// eps * 1_T, T = {|x_1| < 1/eps, |x'|_max < eps^{-1/2}}. A grid point stands
// for its cell, tested at the cell centre.
GridFunction tube_potential(double eps, const BoxGrid& g);

// L^q-normalized tube on T_R = {|x_1| < R, |x'|_max < R^{1/2}}. The sharp
// version divides by the exact tube volume 2^d R^{(d+1)/2}; the smooth one is
// a product of bumps adapted to T_R, normalized by its Riemann sum.
GridFunction knapp_tube(double R, double q, const BoxGrid& g, bool smooth);

struct DyadicLevel {
    int i = 0;
    double H = 0.0;       // H_i
    double H_next = 0.0;  // H_{i+1}
    GridFunction V;       // V 1_{H_{i+1} < |V| <= H_i}
};

// H_i = inf{t > 0 : |{|V| > t}| <= 2^{i-1}} with cell measure dx^d.
double dyadic_height(const GridFunction& V, int i);
std::vector<DyadicLevel> dyadic_levels(const GridFunction& V);

struct SparseBall {
    Point center{0.0, 0.0, 0.0};
    std::vector<std::size_t> points;  // grid indices carried by this piece
};

struct SparseFamily {
    double radius = 0.0;
    double separation = 0.0;  // required centre separation (R n)^gamma
    std::vector<SparseBall> balls;
};

struct SparseLevel {
    double gamma = 1.0;
    int K = 1;
    std::size_t n_cells = 0;  // occupied unit cells
    std::vector<SparseFamily> families;

    std::size_t family_count() const { return families.size(); }
    std::size_t max_balls() const;
    double max_radius() const;
};

SparseLevel sparse_split(const GridFunction& Vi, double gamma, int K);
GridFunction sparse_piece(const GridFunction& Vi, const SparseBall& ball);

std::vector<double> sample_subgaussian(const RandomizationScheme& scheme, std::size_t count);
double subgaussian_norm_est(const std::vector<double>& samples);

// Flat binary: "SLABGF01", u32 d, u32 N, f64 L, f64 h, u32 distribution,
// u32 space, u64 seed, then N^d pairs of little-endian float32 (re, im).
// A JSON sidecar with the same fields is written to path + ".json".
void save_grid_function(const std::string& path, const GridFunction& f, const RandomizationScheme& scheme);
GridFunction load_grid_function(const std::string& path, RandomizationScheme* scheme = nullptr);

}  // namespace slab
