#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace slab::detail {

namespace {

struct PlanKey {
    std::vector<int> dims;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (sign != o.sign) return sign < o.sign;
        return dims < o.dims;
    }
};

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(const std::vector<int>& dims, int sign) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    PlanKey key{dims, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t n = 1;
    for (int v : dims) n *= static_cast<std::size_t>(v);
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw Error(Errc::size_overflow, "fftw could not plan transform");
    cache.emplace(key, p);
    return p;
}

}  // namespace

void dft_inplace(std::vector<cplx>& a, const std::vector<int>& dims, int sign) {
    fftw_plan p = get_plan(dims, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace slab::detail
