#include "spectral_lab/nufft.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "spectral_lab/parallel.hpp"

namespace slab {

std::vector<cplx> direct_ft(const LatticeBlock& c, const std::vector<Point>& ks) {
    std::vector<cplx> out(ks.size());
    const int d = c.d;
    parallel_for(ks.size(), [&](std::size_t t) {
        cplx s = 0.0;
        for (std::size_t flat = 0; flat < c.values.size(); ++flat) {
            if (c.values[flat] == 0.0) continue;
            std::size_t rem = flat;
            double phase = 0.0;
            for (int i = d - 1; i >= 0; --i) {
                const int m = static_cast<int>(rem % c.dims[i]);
                rem /= c.dims[i];
                phase += (c.origin[i] + c.dx * m) * ks[t][i];
            }
            s += c.values[flat] * e2pi(-phase);
        }
        out[t] = s;
    });
    return out;
}

// Greengard-Lee fast Gaussian gridding, oversampling ratio 2.
std::vector<cplx> nonuniform_ft(const LatticeBlock& c, const std::vector<Point>& ks, double tol) {
    const int d = c.d;
    const int sp = std::clamp(static_cast<int>(std::ceil(-std::log10(tol))) + 1, 4, 16);
    std::vector<int> M(d), Mr(d), off(d);
    std::vector<double> tau(d);
    for (int i = 0; i < d; ++i) {
        M[i] = c.dims[i];
        Mr[i] = std::max(2 * M[i], 4 * sp);
        Mr[i] += Mr[i] & 1;
        off[i] = M[i] / 2;
        const double ratio = static_cast<double>(Mr[i]) / M[i];
        tau[i] = kPi * sp / (static_cast<double>(M[i]) * M[i] * ratio * (ratio - 0.5));
    }

    // Deconvolved coefficients placed on the oversampled grid at j mod Mr.
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(Mr[i]);
    std::vector<cplx> grid(total, 0.0);
    std::vector<std::vector<double>> deconv(d);
    for (int i = 0; i < d; ++i) {
        deconv[i].resize(M[i]);
        for (int m = 0; m < M[i]; ++m) {
            const double j = m - off[i];
            deconv[i][m] = std::sqrt(kPi / tau[i]) * std::exp(j * j * tau[i]);
        }
    }
    for (std::size_t flat = 0; flat < c.values.size(); ++flat) {
        std::size_t rem = flat, g = 0, stride = 1;
        double w = 1.0;
        for (int i = d - 1; i >= 0; --i) {
            const int m = static_cast<int>(rem % M[i]);
            rem /= M[i];
            int j = m - off[i];
            if (j < 0) j += Mr[i];
            g += stride * static_cast<std::size_t>(j);
            stride *= static_cast<std::size_t>(Mr[i]);
            w *= deconv[i][m];
        }
        grid[g] += w * c.values[flat];
    }
    detail::dft_inplace(grid, Mr, +1);

    std::vector<cplx> out(ks.size());
    const int width = 2 * sp;
    parallel_for(ks.size(), [&](std::size_t t) {
        // P(theta) = sum_m c_m e^{-i m theta} = e^{-i off theta} f(-theta)
        std::array<std::vector<double>, 3> wts;
        std::array<std::vector<int>, 3> idx;
        double pre_phase = 0.0;
        for (int i = 0; i < d; ++i) {
            const double theta = kTwoPi * c.dx * ks[t][i];
            pre_phase += c.origin[i] * ks[t][i];
            pre_phase += off[i] * c.dx * ks[t][i];
            double x = std::fmod(-theta, kTwoPi);
            if (x < 0) x += kTwoPi;
            const double h = kTwoPi / Mr[i];
            const int l0 = static_cast<int>(std::floor(x / h));
            wts[i].resize(width);
            idx[i].resize(width);
            for (int a = 0; a < width; ++a) {
                const int l = l0 - sp + 1 + a;
                const double u = x - l * h;
                wts[i][a] = std::exp(-u * u / (4.0 * tau[i])) / Mr[i];
                idx[i][a] = ((l % Mr[i]) + Mr[i]) % Mr[i];
            }
        }
        cplx s = 0.0;
        if (d == 1) {
            for (int a = 0; a < width; ++a) s += wts[0][a] * grid[idx[0][a]];
        } else if (d == 2) {
            for (int a = 0; a < width; ++a) {
                const cplx* row = &grid[static_cast<std::size_t>(idx[0][a]) * Mr[1]];
                cplx r = 0.0;
                for (int b = 0; b < width; ++b) r += wts[1][b] * row[idx[1][b]];
                s += wts[0][a] * r;
            }
        } else {
            for (int a = 0; a < width; ++a)
                for (int b = 0; b < width; ++b) {
                    const cplx* row = &grid[(static_cast<std::size_t>(idx[0][a]) * Mr[1] + idx[1][b]) * Mr[2]];
                    cplx r = 0.0;
                    for (int e = 0; e < width; ++e) r += wts[2][e] * row[idx[2][e]];
                    s += wts[0][a] * wts[1][b] * r;
                }
        }
        out[t] = s * e2pi(-pre_phase);
    });
    return out;
}

}  // namespace slab
