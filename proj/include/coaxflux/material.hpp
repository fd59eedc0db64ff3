#pragma once

#include <complex>
#include <string>
#include <vector>

namespace coaxflux {

enum class MaterialKind { Conductor, Dielectric, Absorber };

struct MaterialRow {
    double f_hz;
    double eps_p;  // Re(eps_r)
    double eps_pp; // -Im(eps_r), >= 0 for passive media
    double mu_p;   // Re(mu_r)
    double mu_pp;  // -Im(mu_r), >= 0
};

/// Frequency-tabulated electromagnetic properties of a conductor, dielectric
/// or absorber. Loss tangents are always derived from the stored real and
/// imaginary parts, never stored separately.
class MaterialSpectrum {
public:
    MaterialSpectrum() = default;

    /// Conductor with a frequency-independent conductivity [S/m].
    static MaterialSpectrum conductor(std::string name, double sigma_s_per_m,
                                      double mu_p = 1.0);

    /// Non-dispersive dielectric given by constants (e.g. PTFE).
    static MaterialSpectrum constant_dielectric(std::string name, double eps_p,
                                                double tan_delta,
                                                double mu_p = 1.0,
                                                double tan_delta_m = 0.0);

    /// Tabulated dielectric/absorber. Rows must be strictly increasing in
    /// frequency and passive (eps_pp, mu_pp >= 0).
    static MaterialSpectrum tabulated(std::string name, MaterialKind kind,
                                      std::vector<MaterialRow> rows);

    /// Loads a table from CSV with header f_hz,eps_p,eps_pp,mu_p,mu_pp
    /// (extra columns ignored, '#' lines skipped).
    static MaterialSpectrum from_csv(const std::string& path, std::string name,
                                     MaterialKind kind = MaterialKind::Absorber);

    /// Loads a conductor from a key/value file providing sigma_s_per_m.
    static MaterialSpectrum conductor_from_config(const std::string& path,
                                                  std::string name);

    const std::string& name() const noexcept { return name_; }
    MaterialKind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_s_per_m_; }
    const std::vector<MaterialRow>& table() const noexcept { return rows_; }
    bool is_constant() const noexcept { return rows_.size() == 1; }

    double min_f() const;
    double max_f() const;

    /// eps_r = eps' - j eps'', mu_r = mu' - j mu'', linearly interpolated in
    /// frequency. Out-of-range frequencies throw DomainError unless
    /// extrapolate is set (then the nearest row is used, clamped).
    struct Properties {
        std::complex<double> eps_r;
        std::complex<double> mu_r;
    };
    Properties interpolate(double f_hz, bool extrapolate = false) const;

    double eps_p(double f_hz, bool extrapolate = false) const;
    double mu_p(double f_hz, bool extrapolate = false) const;
    double tan_delta(double f_hz, bool extrapolate = false) const;
    double tan_delta_m(double f_hz, bool extrapolate = false) const;

private:
    std::string name_;
    MaterialKind kind_ = MaterialKind::Dielectric;
    double sigma_s_per_m_ = 0.0;
    std::vector<MaterialRow> rows_;

    void validate() const;
    MaterialRow row_at(double f_hz, bool extrapolate) const;
};

/// Vacuum "fill": eps_r = mu_r = 1 at all frequencies.
MaterialSpectrum vacuum_fill();

} // namespace coaxflux
