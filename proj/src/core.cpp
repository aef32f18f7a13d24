#include "spectral_lab/core.hpp"

namespace slab {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_dimension: return "invalid-dimension";
        case Errc::size_overflow: return "size-overflow";
        case Errc::wrong_space: return "wrong-space";
        case Errc::point_outside_box: return "point-outside-box";
        case Errc::misaligned_scale: return "misaligned-scale";
        case Errc::box_too_small: return "box-too-small";
        case Errc::parameter_overflow: return "parameter-overflow";
        case Errc::singular_symbol: return "singular-symbol";
        case Errc::branch_ambiguity: return "branch-ambiguity";
        case Errc::incompatible_stage: return "incompatible-stage";
        case Errc::no_convergence: return "no-convergence";
        case Errc::overflow: return "overflow";
        case Errc::unsupported_dimension: return "unsupported-dimension";
        case Errc::precondition: return "precondition";
        case Errc::endpoint_q: return "endpoint-q";
        case Errc::q_out_of_range: return "q-out-of-range";
        case Errc::region_touches_axis: return "region-touches-positive-axis";
        case Errc::insufficient_samples: return "insufficient-samples";
        case Errc::net_too_coarse: return "net-too-coarse";
        case Errc::config: return "config";
        case Errc::io: return "io";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void require(bool cond, const char* msg) {
    if (!cond) throw Error(Errc::precondition, msg);
}

}  // namespace slab
