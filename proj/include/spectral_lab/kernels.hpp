#pragma once

#include "spectral_lab/core.hpp"

namespace slab {

// Outgoing Green's function of -Laplace - k^2 in R^d, Im k >= 0:
//   d=1: i e^{ik r} / (2k)
//   d=2: (i/4) H0^(1)(k r)   (real k only)
//   d=3: e^{ik r} / (4 pi r)
cplx green_function(int d, cplx k, double r);

// Mean of green_function over the grid cell [-dx/2, dx/2]^d centred on the
// singularity. The static singular part is integrated exactly over the
// cube; the smooth remainder is taken at its value at 0.
cplx green_cell_average(int d, cplx k, double dx);

// Fourier transform of surface measure on the sphere of radius lam,
// (d sigma_lam)^vee(x) at |x| = r, for d = 2 or 3.
double sphere_measure_ft(int d, double lam, double r);

// First zero of (d sigma_1)^vee: on [0, r) the kernel is positive.
double positive_kernel_radius(int d);

// Mean of 1/|x| over the unit cube and of log|x| over the unit square,
// both centred at the origin.
inline constexpr double kCubeInvR = 2.380077363979553;
inline constexpr double kSquareLogR = -1.0611754268825244;

}  // namespace slab
