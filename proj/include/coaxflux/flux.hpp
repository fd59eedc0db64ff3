#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "coaxflux/modes.hpp"

namespace coaxflux {

/// One section of coaxial line between two refrigerator stages. The
/// temperature falls linearly from t_hot to t_cold along the length; an
/// attenuator (0 dB = none) sits at the cold end, thermalized at t_cold.
struct StageSegment {
    double t_hot_k = 0;
    double t_cold_k = 0;
    double length_m = 0;
    double attenuator_db = 0;

    void validate() const;
};

struct CryostatChain {
    std::vector<StageSegment> stages;

    void validate() const; // contiguity: t_cold[i] == t_hot[i+1]
    double base_temperature_k() const; // cold end of the last stage
};

enum class AttenuatorScenario { Active, Bypassed };

/// Thermal photon occupation 1/(exp(h f / kB T) - 1).
double bose_einstein(double f_hz, double t_k);

/// Marches the occupation ODE dN/dx = (alpha ln10 / 10)(n_BE(f,T(x)) - N)
/// across one segment (fixed-step RK4, steps subdivisions).
double propagate_segment(double n_in, const StageSegment& seg,
                         double alpha_db_per_m, double f_hz,
                         int steps = 1000);

/// Discrete attenuator jump N/A + ((A-1)/A) n_BE(f, T), A = 10^(a/10).
double apply_attenuator(double n_in, double a_db, double t_k, double f_hz);

/// One propagating channel: a mode plus its attenuation-vs-frequency law.
struct ModeChannel {
    ModeId mode;
    double f_c_hz = 0;
    std::function<double(double)> alpha_db_per_m;
};

/// Builds channels (TEM + TE modes by default, per the transport model that
/// neglects the strongly attenuated TM family) for a cable up to max_f.
std::vector<ModeChannel> cable_channels(const CoaxGeometry& geom,
                                        double max_f_hz,
                                        bool include_tem = true,
                                        bool include_te = true,
                                        bool include_tm = false);

struct FluxSpectrum {
    std::vector<double> f_hz;
    std::vector<std::string> mode_labels;
    std::vector<std::vector<double>> per_mode; // [mode][freq], 0 below cutoff
    std::vector<double> summed;
    double band_lo_hz = 0;
    double band_hi_hz = 0;
    double band_flux_per_s = 0; // trapezoid of summed N over the band
};

struct FluxOptions {
    double grid_spacing_hz = 0.25e9;
    int ode_steps_per_segment = 1000;
};

/// Integrates the occupation down the chain for every channel, starting each
/// mode fully thermalized at the hot end, then sums modes and band-integrates.
/// The grid spans the band at the requested spacing and places a node just
/// above every in-band cutoff.
FluxSpectrum chain_flux(const CryostatChain& chain,
                        const std::vector<ModeChannel>& channels,
                        std::pair<double, double> band_hz,
                        AttenuatorScenario scenario,
                        const FluxOptions& options = {});

} // namespace coaxflux
