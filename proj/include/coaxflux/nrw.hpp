#pragma once

#include <complex>
#include <vector>

#include "coaxflux/touchstone.hpp"

namespace coaxflux {

/// Rectangular waveguide section filled with the material under test,
/// operated on the dominant TE10 mode.
struct WaveguideSection {
    double broad_wall_m = 0;  // a (2.54 mm for WR10)
    double narrow_wall_m = 0; // b
    double thickness_m = 0;   // d, fill length along propagation

    void validate() const;
    double cutoff_hz() const; // empty-guide TE10 cutoff c/(2a)
};

struct NrwSolution {
    double f_hz = 0;
    int branch = 0;
    std::complex<double> gamma; // interfacial reflection coefficient
    std::complex<double> p;     // propagation factor exp(-j k_z d)
    std::complex<double> k_z;   // complex axial wavevector [1/m]
    std::complex<double> eps_r;
    std::complex<double> mu_r;

    double eps_p() const { return eps_r.real(); }
    double mu_p() const { return mu_r.real(); }
    double tan_delta() const { return -eps_r.imag() / eps_r.real(); }
    double tan_delta_m() const { return -mu_r.imag() / mu_r.real(); }
};

/// Forward model of the filled slab: S-parameters from (eps_r, mu_r).
/// S11 = Gamma (1 - P^2) / (1 - Gamma^2 P^2), S21 = P (1 - Gamma^2) / (...),
/// with Gamma from the filled/empty TE10 wave-impedance ratio and
/// P = exp(-j k_z d). Stands in for a full-wave simulation when checking
/// extracted parameters against measured data.
SParamRecord forward_slab(std::complex<double> eps_r, std::complex<double> mu_r,
                          const WaveguideSection& section, double f_hz);

struct NrwOptions {
    /// The slab is reciprocal and symmetric, so S11/S22 and S21/S12 are
    /// averaged before inversion. Port asymmetry beyond this fraction (and
    /// |S| noticeably above unity) is reported through `warnings`.
    double asymmetry_warn_threshold = 0.1;
    double passivity_slack = 0.02;
    std::vector<std::string>* warnings = nullptr;
};

/// Closed-form extraction of (eps_r, mu_r) on one branch of the propagation
/// phase. Records must be sorted by frequency; the phase of P is unwrapped
/// continuously across the sweep before the branch offset is applied.
std::vector<NrwSolution> nrw_invert(const std::vector<SParamRecord>& records,
                                    const WaveguideSection& section,
                                    int branch, const NrwOptions& options = {});

/// All branches 0..n_max for one thickness.
struct ThicknessBranchSet {
    double thickness_m = 0;
    std::vector<std::vector<NrwSolution>> branches; // [n][freq]
};

ThicknessBranchSet invert_all_branches(const std::vector<SParamRecord>& records,
                                       const WaveguideSection& section,
                                       int n_max, const NrwOptions& options = {});

struct DisambiguationResult {
    double thickness_a_m = 0, thickness_b_m = 0;
    int branch_a = 0, branch_b = 0;
    double discrepancy = 0;     // band-averaged |d eps'| + |d mu'|
    double rel_discrepancy = 0; // relative form, gated by the threshold
    std::vector<NrwSolution> merged; // per-frequency mean of the two picks
};

/// Resolves the 2 pi n phase ambiguity by requiring the extracted real parts
/// to agree between two (or more) fill thicknesses: picks the branch pair
/// minimizing the band-averaged |eps'_A - eps'_B| + |mu'_A - mu'_B| and
/// returns the per-frequency mean of the winning pair. Throws DomainError
/// when fewer than two distinct thicknesses are supplied or when no pair
/// agrees within rel_threshold.
DisambiguationResult disambiguate_branches(
    const std::vector<ThicknessBranchSet>& sets, double rel_threshold = 0.05);

} // namespace coaxflux
