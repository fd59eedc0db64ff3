#pragma once

#include <string>
#include <vector>

#include "coaxflux/material.hpp"

namespace coaxflux {

struct CoaxGeometry {
    double inner_radius_m = 0; // a
    double outer_radius_m = 0; // b (inner radius of the outer conductor)
    MaterialSpectrum conductor;
    MaterialSpectrum dielectric;

    void validate() const; // throws DomainError unless 0 < a < b
};

enum class ModeFamily { TEM, TE, TM };

std::string to_string(ModeFamily f);
ModeFamily mode_family_from_string(const std::string& s);

struct ModeId {
    ModeFamily family = ModeFamily::TEM;
    int n = 0; // azimuthal index
    int m = 0; // radial index (1-based); unused for TEM

    std::string label() const; // "TEM", "TE11", "TM01", ...
};

struct ModeDispersion {
    ModeId mode;
    double k_c = 0; // cutoff wavevector [1/m], 0 for TEM
    double f_c = 0; // cutoff frequency [Hz], 0 for TEM
};

/// Lossless propagation constant beta = sqrt(k^2 - kc^2) with
/// k = 2 pi f sqrt(eps' mu') / c. Throws DomainError for f <= f_c.
double lossless_beta(double f_hz, double k_c, double eps_p, double mu_p);

/// f_c = kc c / (2 pi sqrt(eps' mu')), self-consistent in the dielectric
/// dispersion (clamped to the table range outside it).
double cutoff_frequency_for(double k_c, const MaterialSpectrum& dielectric);

/// First root of the n = 1 TE cross-product for an annular cross-section:
/// the TE11 cutoff wavevector, a purely geometric quantity.
double te11_cutoff_wavevector(double inner_radius_m, double outer_radius_m);

/// All TE or TM cutoffs of the coaxial cross-section with f_c <= max_f and
/// azimuthal index n <= max_n (max_n < 0 scans n until no roots remain).
/// Roots come from a uniform scan of the cross-product function followed by
/// bisection; the result is sorted by ascending f_c.
/// family == TEM returns the single TEM entry.
std::vector<ModeDispersion> find_cutoffs(const CoaxGeometry& geom,
                                         ModeFamily family, int max_n,
                                         double max_f_hz);

struct AttenuationResult {
    double alpha_c_db_per_m = 0; // conductor losses
    double alpha_d_db_per_m = 0; // dielectric losses
    double total_db_per_m() const { return alpha_c_db_per_m + alpha_d_db_per_m; }
};

/// Axial power flow P0 [W] and conductor loss per meter Pl [W/m] for a given
/// field amplitude. Only the ratio enters the attenuation constants, so the
/// amplitude must cancel there.
struct PowerIntegrals {
    double p0_w = 0;
    double pl_w_per_m = 0;
};

/// Closed-form TEM attenuation (surface resistance + dielectric loss terms).
AttenuationResult attenuation_tem(const CoaxGeometry& geom, double f_hz);

/// TE/TM attenuation from the power-flow and wall-loss integrals of the mode
/// fields. Requires f > f_c (below-cutoff modes are treated as
/// non-propagating and throw DomainError).
AttenuationResult attenuation_te(const CoaxGeometry& geom,
                                 const ModeDispersion& mode, double f_hz);
AttenuationResult attenuation_tm(const CoaxGeometry& geom,
                                 const ModeDispersion& mode, double f_hz);

/// Dispatches on mode.family.
AttenuationResult attenuation(const CoaxGeometry& geom,
                              const ModeDispersion& mode, double f_hz);

PowerIntegrals power_integrals(const CoaxGeometry& geom,
                               const ModeDispersion& mode, double f_hz,
                               double amplitude = 1.0);

/// Precomputes the frequency-independent radial integrals of one TE/TM mode
/// so sweeps cost a few flops per point.
class ModeLoss {
public:
    ModeLoss(const CoaxGeometry& geom, const ModeDispersion& mode);

    AttenuationResult at(double f_hz) const;
    PowerIntegrals power(double f_hz, double amplitude) const;
    const ModeDispersion& mode() const noexcept { return mode_; }

private:
    ModeDispersion mode_;
    double a_ = 0, b_ = 0;
    MaterialSpectrum conductor_;
    MaterialSpectrum dielectric_;
    double i0_ = 0;                        // radial power-flow integral
    double wall_a_sq_ = 0, wall_b_sq_ = 0; // squared radial function (TE) or its
                                           // derivative (TM) at the walls
};

} // namespace coaxflux
