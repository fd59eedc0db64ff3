#pragma once

#include <string>
#include <vector>

#include "coaxflux/flux.hpp"
#include "coaxflux/modes.hpp"

namespace coaxflux {

/// Catalog constants for the supported semi-rigid lines: stainless steel
/// conductors (sigma = 1.41e6 S/m) with PTFE dielectric
/// (eps' = 2.08, tan_delta = 4e-4).
/// id: "ut086", "ut047" or "ut034".
CoaxGeometry cable_preset(const std::string& id);

std::vector<std::string> cable_preset_ids();

/// PTFE dielectric used by the presets.
MaterialSpectrum ptfe();

/// Stainless-steel conductor used by the presets.
MaterialSpectrum stainless_steel();

/// Room-temperature copper (sigma = 67e6 S/m), the filter body material.
MaterialSpectrum copper_rt();

/// Default five-section dilution-refrigerator wiring chain:
/// stages 300 / 35 / 2.85 / 0.882 / 0.082 / 0.006 K, section lengths
/// 228 / 271 / 263 / 231 / 306 mm, attenuators 0 / 20 / 0 / 20 / 20 dB.
CryostatChain default_chain(double length_scale = 1.0);

} // namespace coaxflux
