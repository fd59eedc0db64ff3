#include "coaxflux/filter.hpp"

#include <algorithm>
#include <cmath>

#include "coaxflux/bessel.hpp"
#include "coaxflux/constants.hpp"
#include "coaxflux/csv.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/quadrature.hpp"

namespace coaxflux {

namespace {

using constants::eps0;
using constants::light_speed;
using constants::mu0;
using constants::np_to_db;
using constants::pi;
using constants::z_vac;

using cplx = std::complex<double>;

cplx axial_wavevector(double omega, cplx eps_r, cplx mu_r, double k_c) {
    cplx arg = (omega / light_speed) * (omega / light_speed) * eps_r * mu_r -
               k_c * k_c;
    cplx k = std::sqrt(arg);
    if (k.imag() > 0) k = -k;
    if (k.imag() == 0 && k.real() < 0) k = -k;
    return k;
}

// Radial integrals of the TE11 profile R(x) = J1(x) Y1'(xb) - J1'(xb) Y1(x):
// i0 = int n^2 R^2/x + x R'^2 dx (power flow), iz = int x R^2 dx (|Hz|^2).
struct Te11Integrals {
    double i0, iz, wall_a_sq, wall_b_sq;
};

Te11Integrals te11_integrals(double a, double b, double k_c) {
    const int n = 1;
    const double xa = k_c * a, xb = k_c * b;
    const BesselEval eb = bessel_eval(n, xb);
    const double cj = eb.jp, cy = eb.yp;
    auto radial = [&](double x) {
        BesselEval e = bessel_eval(n, x);
        return e.j * cy - cj * e.y;
    };
    Te11Integrals out;
    double ra = radial(xa), rb = radial(xb);
    out.wall_a_sq = ra * ra;
    out.wall_b_sq = rb * rb;
    out.i0 = integrate_adaptive(
                 [&](double x) {
                     BesselEval e = bessel_eval(n, x);
                     double r = e.j * cy - cj * e.y;
                     double rp = e.jp * cy - cj * e.yp;
                     return n * n * r * r / x + x * rp * rp;
                 },
                 xa, xb, 1e-10, 1e-9)
                 .value;
    out.iz = integrate_adaptive(
                 [&](double x) {
                     BesselEval e = bessel_eval(n, x);
                     double r = e.j * cy - cj * e.y;
                     return x * r * r;
                 },
                 xa, xb, 1e-10, 1e-9)
                 .value;
    return out;
}

} // namespace

void FilterGeometry::validate() const {
    if (!(pin_diameter_m > 0) || !(bore_diameter_m > pin_diameter_m))
        throw DomainError("filter geometry requires 0 < d_pin < D_bore");
    if (!(length_m > 0)) throw DomainError("filter geometry requires l > 0");
}

cplx coax_impedance(double inner_radius_m, double outer_radius_m, cplx eps_r,
                    cplx mu_r) {
    return z_vac * std::log(outer_radius_m / inner_radius_m) / (2.0 * pi) *
           std::sqrt(mu_r / eps_r);
}

cplx filter_impedance(const FilterGeometry& geom, double f_hz) {
    geom.validate();
    auto props = geom.fill.interpolate(f_hz);
    return coax_impedance(geom.inner_radius_m(), geom.outer_radius_m(),
                          props.eps_r, props.mu_r);
}

double average_reflection_db(double pin_m, double bore_m,
                             const MaterialSpectrum& fill,
                             std::pair<double, double> band_hz,
                             double grid_hz) {
    const double lo = band_hz.first, hi = band_hz.second;
    if (!(lo > 0) || !(hi > lo))
        throw DomainError("average_reflection_db: bad band");
    const long steps =
        std::max(1L, std::lround((hi - lo) / grid_hz));
    double acc = 0.0;
    for (long i = 0; i <= steps; ++i) {
        double f = lo + (hi - lo) * static_cast<double>(i) / steps;
        auto props = fill.interpolate(f);
        cplx z = coax_impedance(pin_m / 2, bore_m / 2, props.eps_r, props.mu_r);
        double mag = std::abs((z - 50.0) / (z + 50.0));
        double db = 20.0 * std::log10(std::max(mag, 1e-10));
        acc += db;
    }
    return acc / static_cast<double>(steps + 1);
}

BoreOptimum optimize_bore(double pin_m, const MaterialSpectrum& fill,
                          std::pair<double, double> band_hz, double grid_hz,
                          double search_max_m) {
    if (!(pin_m > 0)) throw DomainError("optimize_bore: pin must be > 0");
    double lo = 1.1 * pin_m;
    double hi = search_max_m;
    if (!(hi > lo)) throw DomainError("optimize_bore: empty search range");

    auto objective = [&](double bore) {
        return average_reflection_db(pin_m, bore, fill, band_hz, grid_hz);
    };

    // Golden-section: the objective is unimodal for monotone ln(D/d) scaling.
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    BoreOptimum opt;
    opt.bore_m = 0.5 * (lo + hi);
    opt.avg_reflection_db = objective(opt.bore_m);
    if (opt.bore_m - 1.1 * pin_m < 1e-7 || search_max_m - opt.bore_m < 1e-7)
        throw DomainError("optimize_bore: minimum sits at the search-range "
                          "boundary; widen the range");
    return opt;
}

double filter_te11_kc(const FilterGeometry& geom) {
    geom.validate();
    return te11_cutoff_wavevector(geom.inner_radius_m(),
                                  geom.outer_radius_m());
}

double filter_te11_fc(const FilterGeometry& geom) {
    return cutoff_frequency_for(filter_te11_kc(geom), geom.fill);
}

cplx te_wave_impedance(double f_hz, cplx eps_r, cplx mu_r, double k_c) {
    const double omega = 2.0 * pi * f_hz;
    cplx kz = axial_wavevector(omega, eps_r, mu_r, k_c);
    if (std::abs(kz) == 0.0)
        throw DomainError("te_wave_impedance: at cutoff");
    return omega * mu0 * mu_r / kz;
}

LossBreakdown filter_attenuation(const FilterGeometry& geom, ModeFamily mode,
                                 double f_hz) {
    geom.validate();
    if (mode == ModeFamily::TM)
        throw DomainError("filter_attenuation: only TEM and TE11 are "
                          "supported");

    const double a = geom.inner_radius_m();
    const double b = geom.outer_radius_m();
    const double omega = 2.0 * pi * f_hz;
    auto props = geom.fill.interpolate(f_hz);
    const double eps_p = props.eps_r.real();
    const double eps_pp = -props.eps_r.imag();
    const double mu_p = props.mu_r.real();
    const double mu_pp = -props.mu_r.imag();
    const double tan_d = eps_pp / eps_p;
    const double tan_dm = mu_pp / mu_p;
    const double k = omega * std::sqrt(eps_p * mu_p) / light_speed;

    if (geom.conductor.sigma() <= 0)
        throw DomainError("filter_attenuation: conductor sigma <= 0");
    const double mu_c = geom.conductor.mu_p(0.0, true);
    const double rs =
        std::sqrt(omega * mu0 * mu_c / (2.0 * geom.conductor.sigma()));

    LossBreakdown out;
    if (mode == ModeFamily::TEM) {
        // Exact: TEM fields with the complex wave impedance of the fill.
        const cplx eta =
            std::sqrt(mu0 * props.mu_r / (eps0 * props.eps_r));
        const double eta_abs2 = std::norm(eta);
        const double lnba = std::log(b / a);
        out.p0_w = pi * lnba * eta.real() / eta_abs2;
        out.p_d_w_per_m = pi * omega * eps0 * eps_pp * lnba;
        out.p_m_w_per_m = pi * omega * mu0 * mu_pp * lnba / eta_abs2;
        out.alpha_dm_db_per_m =
            np_to_db * (out.p_d_w_per_m + out.p_m_w_per_m) / (2.0 * out.p0_w);
        out.alpha_dm_smallloss_db_per_m =
            np_to_db * k * (tan_d + tan_dm) / 2.0;

        const double z0 =
            std::sqrt(mu0 * mu_p / (eps0 * eps_p)) * lnba / (2.0 * pi);
        out.alpha_c_db_per_m =
            np_to_db * rs / (4.0 * pi * z0) * (1.0 / a + 1.0 / b);
        return out;
    }

    // TE11
    const double k_c = filter_te11_kc(geom);
    const double beta2 = k * k - k_c * k_c;
    if (!(beta2 > 0))
        throw DomainError("filter_attenuation: TE11 below cutoff at f=" +
                          std::to_string(f_hz));
    const double beta = std::sqrt(beta2);
    const Te11Integrals ints = te11_integrals(a, b, k_c);
    const double kc2 = k_c * k_c;
    const double kc4 = kc2 * kc2;

    // Exact: complex material in the field amplitudes, geometric kc profile.
    const cplx kz = axial_wavevector(omega, props.eps_r, props.mu_r, k_c);
    const double p0 =
        pi * omega * mu0 * (props.mu_r * std::conj(kz)).real() * ints.i0 /
        (2.0 * kc4);
    const double pd = pi * omega * eps0 * eps_pp / 2.0 *
                      (omega * omega * mu0 * mu0 * std::norm(props.mu_r)) *
                      ints.i0 / kc4;
    const double pm = pi * omega * mu0 * mu_pp / 2.0 *
                      (std::norm(kz) * ints.i0 / kc4 + ints.iz / kc2);
    out.p0_w = p0;
    out.p_d_w_per_m = pd;
    out.p_m_w_per_m = pm;
    out.alpha_dm_db_per_m = np_to_db * (pd + pm) / (2.0 * p0);
    out.alpha_dm_smallloss_db_per_m =
        np_to_db * k * k * (tan_d + tan_dm) / (2.0 * beta);

    // Conductor walls: perturbative, real-material fields.
    const double n2 = 1.0;
    const double ga = 1.0 + beta2 * n2 / (kc4 * a * a);
    const double gb = 1.0 + beta2 * n2 / (kc4 * b * b);
    const double pl = pi * rs / 2.0 *
                      (a * ga * ints.wall_a_sq + b * gb * ints.wall_b_sq);
    const double p0_real = pi * omega * mu0 * mu_p * beta * ints.i0 / (2.0 * kc4);
    out.alpha_c_db_per_m = np_to_db * pl / (2.0 * p0_real);
    return out;
}

double photon_entry_factor(cplx z1, cplx z2) {
    const cplx denom = z1 + z2;
    if (std::abs(denom) < 1e-300)
        throw DomainError("photon_entry_factor: Z1 + Z2 = 0");
    const double refl = std::norm((z2 - z1) / denom);
    return std::max(0.0, 1.0 - refl);
}

double photon_entry(double n_in, cplx z1, cplx z2) {
    if (!(n_in >= 0)) throw DomainError("photon_entry: N must be >= 0");
    return n_in * photon_entry_factor(z1, z2);
}

double MeasuredS21::attenuation_factor(double f) const {
    if (f_hz.empty()) throw DomainError("measured S21: empty table");
    if (f < f_hz.front() || f > f_hz.back())
        throw DomainError("measured S21: frequency outside the table");
    auto hi = std::lower_bound(f_hz.begin(), f_hz.end(), f);
    std::size_t j = static_cast<std::size_t>(hi - f_hz.begin());
    double s;
    if (j == 0) {
        s = mean_s21_db.front();
    } else {
        double t = (f - f_hz[j - 1]) / (f_hz[j] - f_hz[j - 1]);
        s = mean_s21_db[j - 1] + t * (mean_s21_db[j] - mean_s21_db[j - 1]);
    }
    // Upper-bound semantics: a filter cannot amplify, so clamp at unity.
    return std::max(1.0, std::pow(10.0, -s / 10.0));
}

double MeasuredS21::max_f() const {
    return f_hz.empty() ? 0.0 : f_hz.back();
}

MeasuredS21 load_measured_s21(const std::string& csv_path) {
    CsvTable t = read_csv(csv_path);
    int fi = t.column_index("f_hz");
    int ti = t.column_index("s21_db_thru");
    if (fi < 0 || ti < 0)
        throw ParseError(csv_path +
                         ": need columns f_hz and s21_db_thru plus at least "
                         "one per-filter S21 column");
    std::vector<int> filters;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        if (static_cast<int>(c) != fi && static_cast<int>(c) != ti)
            filters.push_back(static_cast<int>(c));
    if (filters.empty())
        throw ParseError(csv_path + ": no per-filter S21 columns");

    MeasuredS21 m;
    for (const auto& row : t.rows) {
        m.f_hz.push_back(row[static_cast<size_t>(fi)]);
        double avg = 0;
        for (int c : filters) avg += row[static_cast<size_t>(c)];
        avg /= static_cast<double>(filters.size());
        m.mean_s21_db.push_back(avg - row[static_cast<size_t>(ti)]);
    }
    for (std::size_t i = 1; i < m.f_hz.size(); ++i)
        if (!(m.f_hz[i] > m.f_hz[i - 1]))
            throw ParseError(csv_path + ": frequencies must increase");
    return m;
}

FluxSpectrum residual_flux(const FluxSpectrum& chain_output,
                           const FilterGeometry& filter,
                           const CoaxGeometry& cable,
                           double base_temperature_k,
                           std::pair<double, double> band_hz,
                           const ResidualFluxOptions& options) {
    filter.validate();
    cable.validate();
    const double lo = band_hz.first, hi = band_hz.second;
    if (!(lo > 0) || !(hi > lo))
        throw DomainError("residual_flux: bad band");
    if (chain_output.f_hz.empty() || chain_output.f_hz.front() > lo ||
        chain_output.f_hz.back() < hi)
        throw DomainError("residual_flux: chain output does not cover the "
                          "requested band");

    // Band sub-grid of the chain output.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < chain_output.f_hz.size(); ++i)
        if (chain_output.f_hz[i] >= lo && chain_output.f_hz[i] <= hi)
            idx.push_back(i);
    if (idx.size() < 2)
        throw DomainError("residual_flux: fewer than two grid nodes in band");

    int tem_row = -1, te11_row = -1;
    for (std::size_t c = 0; c < chain_output.mode_labels.size(); ++c) {
        const std::string& l = chain_output.mode_labels[c];
        if (l == "TEM") tem_row = static_cast<int>(c);
        else if (l == "TE11") te11_row = static_cast<int>(c);
        else {
            for (std::size_t i : idx)
                if (chain_output.per_mode[c][i] > 0)
                    throw DomainError("residual_flux: unsupported mode '" + l +
                                      "' carries flux inside the band");
        }
    }

    const double kc_cable =
        te11_cutoff_wavevector(cable.inner_radius_m, cable.outer_radius_m);
    const double kc_filter = filter_te11_kc(filter);

    FluxSpectrum out;
    out.band_lo_hz = lo;
    out.band_hi_hz = hi;
    for (std::size_t i : idx) out.f_hz.push_back(chain_output.f_hz[i]);
    const std::size_t m = out.f_hz.size();

    auto process = [&](int row, bool is_te11) {
        std::vector<double> vals(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const double f = out.f_hz[k];
            const double n1 =
                chain_output.per_mode[static_cast<std::size_t>(row)][idx[k]];
            if (n1 == 0.0) continue;

            auto cable_props = cable.dielectric.interpolate(f);
            auto fill_props = filter.fill.interpolate(f);
            cplx z1, z2;
            if (is_te11) {
                z1 = te_wave_impedance(f, cable_props.eps_r, cable_props.mu_r,
                                       kc_cable);
                z2 = te_wave_impedance(f, fill_props.eps_r, fill_props.mu_r,
                                       kc_filter);
            } else {
                z1 = coax_impedance(cable.inner_radius_m, cable.outer_radius_m,
                                    cable_props.eps_r, cable_props.mu_r);
                z2 = filter_impedance(filter, f);
            }
            double n2 = photon_entry(n1, z1, z2);

            double att;
            if (options.use_measured_path && f <= options.measured_crossover_hz) {
                if (!options.measured)
                    throw DomainError("residual_flux: measured-S21 path "
                                      "requested without measured data");
                att = options.measured->attenuation_factor(f);
            } else {
                const LossBreakdown loss = filter_attenuation(
                    filter, is_te11 ? ModeFamily::TE : ModeFamily::TEM, f);
                att = std::pow(10.0, loss.alpha_dm_db_per_m * filter.length_m /
                                         10.0);
            }
            const double inv_a = 1.0 / att;
            vals[k] = n2 * inv_a +
                      (1.0 - inv_a) * bose_einstein(f, base_temperature_k);
        }
        return vals;
    };

    out.summed.assign(m, 0.0);
    if (tem_row >= 0) {
        out.mode_labels.push_back("TEM");
        out.per_mode.push_back(process(tem_row, false));
    }
    if (te11_row >= 0) {
        out.mode_labels.push_back("TE11");
        out.per_mode.push_back(process(te11_row, true));
    }
    if (out.per_mode.empty())
        throw DomainError("residual_flux: no TEM/TE11 channels in the chain "
                          "output");
    for (const auto& row : out.per_mode)
        for (std::size_t k = 0; k < m; ++k) out.summed[k] += row[k];

    double acc = 0;
    for (std::size_t k = 0; k + 1 < m; ++k)
        acc += 0.5 * (out.summed[k] + out.summed[k + 1]) *
               (out.f_hz[k + 1] - out.f_hz[k]);
    out.band_flux_per_s = acc;
    return out;
}

} // namespace coaxflux
