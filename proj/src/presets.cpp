#include "coaxflux/presets.hpp"

#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

// Semi-rigid stainless/PTFE line constants.
constexpr double sigma_stainless = 1.41e6; // S/m
constexpr double sigma_copper_rt = 67e6;   // S/m
constexpr double ptfe_eps_p = 2.08;
constexpr double ptfe_tan_delta = 0.0004;

struct CableDims {
    const char* id;
    double a_mm; // inner conductor radius
    double b_mm; // outer conductor inner radius
};

constexpr CableDims cable_dims[] = {
    {"ut086", 0.255, 0.835},
    {"ut047", 0.1435, 0.47},
    {"ut034", 0.1015, 0.33},
};

} // namespace

MaterialSpectrum ptfe() {
    return MaterialSpectrum::constant_dielectric("ptfe", ptfe_eps_p,
                                                 ptfe_tan_delta);
}

MaterialSpectrum stainless_steel() {
    return MaterialSpectrum::conductor("stainless-steel", sigma_stainless);
}

MaterialSpectrum copper_rt() {
    return MaterialSpectrum::conductor("copper-rt", sigma_copper_rt);
}

std::vector<std::string> cable_preset_ids() {
    std::vector<std::string> ids;
    for (const auto& c : cable_dims) ids.emplace_back(c.id);
    return ids;
}

CoaxGeometry cable_preset(const std::string& id) {
    for (const auto& c : cable_dims) {
        if (id == c.id) {
            CoaxGeometry g;
            g.inner_radius_m = c.a_mm * 1e-3;
            g.outer_radius_m = c.b_mm * 1e-3;
            g.conductor = stainless_steel();
            g.dielectric = ptfe();
            return g;
        }
    }
    throw ConfigError("unknown cable preset '" + id +
                      "' (expected ut086|ut047|ut034)");
}

CryostatChain default_chain(double length_scale) {
    if (!(length_scale > 0))
        throw DomainError("default_chain: length scale must be > 0");
    const double temps_k[] = {300, 35, 2.85, 0.882, 0.082, 0.006};
    const double lengths_mm[] = {228, 271, 263, 231, 306};
    const double attens_db[] = {0, 20, 0, 20, 20};

    CryostatChain chain;
    for (int i = 0; i < 5; ++i) {
        StageSegment s;
        s.t_hot_k = temps_k[i];
        s.t_cold_k = temps_k[i + 1];
        s.length_m = lengths_mm[i] * 1e-3 * length_scale;
        s.attenuator_db = attens_db[i];
        chain.stages.push_back(s);
    }
    chain.validate();
    return chain;
}

} // namespace coaxflux
