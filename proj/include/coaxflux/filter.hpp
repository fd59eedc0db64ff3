#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "coaxflux/flux.hpp"
#include "coaxflux/material.hpp"
#include "coaxflux/modes.hpp"

namespace coaxflux {

/// Absorber-filled coaxial filter: connector pin soldered through a bored
/// copper block cast full of lossy material.
struct FilterGeometry {
    double pin_diameter_m = 0;  // d
    double bore_diameter_m = 0; // D
    double length_m = 0;        // l
    MaterialSpectrum fill;
    MaterialSpectrum conductor;

    void validate() const;
    double inner_radius_m() const { return pin_diameter_m / 2; }
    double outer_radius_m() const { return bore_diameter_m / 2; }
};

/// Characteristic impedance Z = Z_vac ln(D/d) / (2 pi) * sqrt(mu_r/eps_r) of
/// the filled coaxial section; complex for lossy fills.
std::complex<double> filter_impedance(const FilterGeometry& geom, double f_hz);
std::complex<double> coax_impedance(double inner_radius_m,
                                    double outer_radius_m,
                                    std::complex<double> eps_r,
                                    std::complex<double> mu_r);

/// Band-averaged reflection 20 log10 |(Z - 50)/(Z + 50)| in dB (per-point
/// values floor-clamped at -200 dB so perfect matches stay finite).
double average_reflection_db(double pin_m, double bore_m,
                             const MaterialSpectrum& fill,
                             std::pair<double, double> band_hz,
                             double grid_hz = 0.1e9);

struct BoreOptimum {
    double bore_m = 0;
    double avg_reflection_db = 0;
};

/// Golden-section search of the bore diameter minimizing the band-averaged
/// reflection over [1.1 d, search_max].
BoreOptimum optimize_bore(double pin_m, const MaterialSpectrum& fill,
                          std::pair<double, double> band_hz,
                          double grid_hz = 0.1e9,
                          double search_max_m = 20e-3);

/// TE11 cutoff wavevector of the filter cross-section (geometric: first root
/// of the n = 1 TE cross-product).
double filter_te11_kc(const FilterGeometry& geom);

/// Cutoff frequency for that kc, self-consistent in the fill dispersion
/// (clamped to the tabulated range when the table does not reach f_c).
double filter_te11_fc(const FilterGeometry& geom);

struct LossBreakdown {
    double alpha_c_db_per_m = 0;        // conductor walls
    double alpha_dm_db_per_m = 0;       // dielectric + magnetic, full integrals
    double alpha_dm_smallloss_db_per_m = 0; // k^2 (tan_d + tan_dm) / (2 beta)
    double p_d_w_per_m = 0;             // dielectric dissipation (unit amplitude)
    double p_m_w_per_m = 0;             // magnetic dissipation
    double p0_w = 0;                    // axial power flow
    double attenuation_db(double length_m) const {
        return alpha_dm_db_per_m * length_m;
    }
};

/// Attenuation of the filled filter for TEM or TE11. alpha_dm comes from the
/// dissipation integrals with the complex material in the field amplitudes
/// (no small-loss-tangent assumption); the small-loss value is reported
/// alongside for comparison. Conductor loss uses the wall-current integrals
/// with the conductor's surface resistance.
LossBreakdown filter_attenuation(const FilterGeometry& geom, ModeFamily mode,
                                 double f_hz);

/// TE wave impedance omega mu0 mu_r / sqrt((omega/c)^2 eps_r mu_r - kc^2).
std::complex<double> te_wave_impedance(double f_hz, std::complex<double> eps_r,
                                       std::complex<double> mu_r, double k_c);

/// Fraction of photons transmitted across an impedance step:
/// 1 - |(Z2 - Z1)/(Z2 + Z1)|^2, in [0, 1].
double photon_entry_factor(std::complex<double> z1, std::complex<double> z2);

/// N entering medium 2 given N arriving in medium 1.
double photon_entry(double n_in, std::complex<double> z1,
                    std::complex<double> z2);

/// Mean measured filter transmission: per-filter S21[dB] columns averaged and
/// corrected by the through line, then A = 10^(-mean/10).
struct MeasuredS21 {
    std::vector<double> f_hz;
    std::vector<double> mean_s21_db; // through-corrected
    double attenuation_factor(double f_hz) const; // >= 1
    double max_f() const;
};

MeasuredS21 load_measured_s21(const std::string& csv_path);

struct ResidualFluxOptions {
    std::optional<MeasuredS21> measured; // used below measured_crossover_hz
    double measured_crossover_hz = 70e9;
    bool use_measured_path = false; // requires `measured` when any f <= crossover
};

/// Applies the filter to a chain output spectrum: reflection-limited entry
/// per mode, then the attenuator-jump relation with the filter's attenuation
/// A(f) = 10^(alpha_dm l / 10), thermalized at the base temperature. Only the
/// TEM and TE11 channels of the cable are filtered (the only ones present in
/// the band of interest); reports the band integral over band_hz.
FluxSpectrum residual_flux(const FluxSpectrum& chain_output,
                           const FilterGeometry& filter,
                           const CoaxGeometry& cable,
                           double base_temperature_k,
                           std::pair<double, double> band_hz,
                           const ResidualFluxOptions& options = {});

} // namespace coaxflux
