#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "spectral_lab/potentials.hpp"
#include "spectral_lab/table_io.hpp"

namespace slab {

namespace {

constexpr char kMagic[8] = {'S', 'L', 'A', 'B', 'G', 'F', '0', '1'};

template <class T>
void put_le(std::string& buf, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    buf.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(const std::string& buf, std::size_t& pos) {
    if (pos + sizeof(T) > buf.size()) throw Error(Errc::io, "truncated grid function file");
    unsigned char b[sizeof(T)];
    std::memcpy(b, buf.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    pos += sizeof(T);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

void save_grid_function(const std::string& path, const GridFunction& f, const RandomizationScheme& scheme) {
    std::string buf(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(f.grid.d));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(f.grid.N));
    put_le<double>(buf, f.grid.L);
    put_le<double>(buf, scheme.h);
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(scheme.distribution));
    put_le<std::uint32_t>(buf, f.space == Space::position ? 0u : 1u);
    put_le<std::uint64_t>(buf, scheme.seed);
    buf.reserve(buf.size() + 8 * f.size());
    for (const auto& v : f.values) {
        put_le<float>(buf, static_cast<float>(v.real()));
        put_le<float>(buf, static_cast<float>(v.imag()));
    }
    write_file_atomic(path, buf);

    nlohmann::ordered_json meta;
    meta["format"] = "SLABGF01";
    meta["d"] = f.grid.d;
    meta["L"] = f.grid.L;
    meta["N"] = f.grid.N;
    meta["dx"] = f.grid.dx;
    meta["h"] = scheme.h;
    meta["distribution"] = distribution_name(scheme.distribution);
    meta["seed"] = scheme.seed;
    meta["space"] = f.space == Space::position ? "position" : "frequency";
    meta["element"] = "complex64-le";
    write_file_atomic(path + ".json", meta.dump(2) + "\n");
}

GridFunction load_grid_function(const std::string& path, RandomizationScheme* scheme) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < sizeof(kMagic) || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
        throw Error(Errc::io, "bad magic in " + path);
    std::size_t pos = sizeof(kMagic);
    const int d = static_cast<int>(get_le<std::uint32_t>(buf, pos));
    const int N = static_cast<int>(get_le<std::uint32_t>(buf, pos));
    const double L = get_le<double>(buf, pos);
    RandomizationScheme s;
    s.h = get_le<double>(buf, pos);
    const auto tag = get_le<std::uint32_t>(buf, pos);
    if (tag > 2) throw Error(Errc::io, "bad distribution tag");
    s.distribution = static_cast<Distribution>(tag);
    const auto space = get_le<std::uint32_t>(buf, pos);
    s.seed = get_le<std::uint64_t>(buf, pos);
    GridFunction f(make_grid(d, L, N), space == 0 ? Space::position : Space::frequency);
    if (buf.size() - pos != 8 * f.size()) throw Error(Errc::io, "payload size mismatch in " + path);
    for (auto& v : f.values) {
        const float re = get_le<float>(buf, pos);
        const float im = get_le<float>(buf, pos);
        v = cplx(re, im);
    }
    if (scheme) *scheme = s;
    return f;
}

}  // namespace slab
