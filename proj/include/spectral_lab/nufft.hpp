#pragma once

#include <vector>

#include "spectral_lab/core.hpp"

namespace slab {

// Values of c on the lattice origin + dx*m, m in [0, dims) row-major.
struct LatticeBlock {
    int d = 1;
    std::vector<int> dims;
    Point origin{0.0, 0.0, 0.0};
    double dx = 1.0;
    std::vector<cplx> values;
};

// F(k) = sum_m c_m e(-(origin + dx m) . k) at arbitrary frequencies k, by
// Gaussian gridding on a 2x oversampled grid. tol is the target relative
// accuracy with respect to sum |c_m|.
std::vector<cplx> nonuniform_ft(const LatticeBlock& c, const std::vector<Point>& ks, double tol = 1e-10);

// Same sum evaluated term by term.
std::vector<cplx> direct_ft(const LatticeBlock& c, const std::vector<Point>& ks);

}  // namespace slab
