#pragma once

#include <vector>

#include "spectral_lab/core.hpp"

namespace slab::detail {

// Unnormalized in-place DFT over a row-major array with the given extents.
// sign = -1 forward, +1 backward.
void dft_inplace(std::vector<cplx>& a, const std::vector<int>& dims, int sign);

}  // namespace slab::detail
