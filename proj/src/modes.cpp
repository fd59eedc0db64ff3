#include "coaxflux/modes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coaxflux/bessel.hpp"
#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/quadrature.hpp"

namespace coaxflux {

namespace {

using constants::eps0;
using constants::light_speed;
using constants::mu0;
using constants::np_to_db;
using constants::pi;

double wavenumber(double f_hz, double eps_p, double mu_p) {
    return 2.0 * pi * f_hz * std::sqrt(eps_p * mu_p) / light_speed;
}

double surface_resistance(double f_hz, const MaterialSpectrum& conductor) {
    if (conductor.sigma() <= 0)
        throw DomainError("invalid conductor material '" + conductor.name() +
                          "': sigma <= 0");
    double mu_c = conductor.mu_p(0.0, true);
    return std::sqrt(2.0 * pi * f_hz * mu0 * mu_c / (2.0 * conductor.sigma()));
}

double cross_value(ModeFamily family, int n, double kc, double a, double b) {
    return family == ModeFamily::TE ? bessel_cross_te(n, kc * a, kc * b)
                                    : bessel_cross_tm(n, kc * a, kc * b);
}

struct Root {
    double kc;
    double bracket_scale; // |f| at the bracket ends, for residual checks
};

// Uniform scan with >= 20 samples per asymptotic root period pi/(b-a),
// bisection refinement to 1e-12 relative width.
std::vector<Root> scan_roots(ModeFamily family, int n, double a, double b,
                             double kc_max) {
    std::vector<Root> roots;
    double step = pi / (b - a) / 20.0;
    if (kc_max <= step) return roots;

    double k_prev = step;
    double f_prev = cross_value(family, n, k_prev, a, b);
    for (double k = 2.0 * step; k_prev < kc_max; k += step) {
        k = std::min(k, kc_max);
        double f = cross_value(family, n, k, a, b);
        if (f == 0.0) {
            roots.push_back({k, std::fabs(f_prev)});
        } else if (f_prev * f < 0.0) {
            double lo = k_prev, hi = k;
            double flo = f_prev;
            double scale = std::max(std::fabs(f_prev), std::fabs(f));
            int iter = 0;
            while (hi - lo > 1e-12 * hi && iter++ < 200) {
                double mid = 0.5 * (lo + hi);
                double fm = cross_value(family, n, mid, a, b);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            double kc = 0.5 * (lo + hi);
            double residual = std::fabs(cross_value(family, n, kc, a, b));
            if (!(residual <= 1e-8 * scale)) {
                std::ostringstream os;
                os << "cutoff root refinement failed for " << to_string(family)
                   << " n=" << n << " bracket [" << k_prev << ", " << k
                   << "] 1/m: residual " << residual << " vs scale " << scale;
                throw NumericError(os.str());
            }
            roots.push_back({kc, scale});
        }
        if (k >= kc_max) break;
        k_prev = k;
        f_prev = f;
    }
    return roots;
}

} // namespace

double cutoff_frequency_for(double k_c, const MaterialSpectrum& dielectric) {
    // Self-consistent in the dielectric dispersion (clamped to the table
    // range); exact in one pass for non-dispersive dielectrics.
    double f = k_c * light_speed / (2.0 * pi);
    for (int i = 0; i < 100; ++i) {
        double em = dielectric.eps_p(f, true) * dielectric.mu_p(f, true);
        double next = k_c * light_speed / (2.0 * pi * std::sqrt(em));
        if (std::fabs(next - f) <= 1e-12 * next) return next;
        f = next;
    }
    throw NumericError("cutoff_frequency_for: dispersion fixed point did not "
                       "converge for kc=" + std::to_string(k_c));
}

double te11_cutoff_wavevector(double inner_radius_m, double outer_radius_m) {
    const double a = inner_radius_m, b = outer_radius_m;
    if (!(a > 0) || !(b > a))
        throw DomainError("te11_cutoff_wavevector: requires 0 < a < b");
    double kc_max = 20.0 / (a + b); // well past the first root ~ 2/(a+b)
    auto roots = scan_roots(ModeFamily::TE, 1, a, b, kc_max);
    if (roots.empty())
        throw NumericError("te11_cutoff_wavevector: no root found");
    return roots.front().kc;
}

void CoaxGeometry::validate() const {
    if (!(inner_radius_m > 0) || !(outer_radius_m > inner_radius_m))
        throw DomainError("coax geometry requires 0 < a < b");
}

std::string to_string(ModeFamily f) {
    switch (f) {
        case ModeFamily::TEM: return "TEM";
        case ModeFamily::TE: return "TE";
        case ModeFamily::TM: return "TM";
    }
    return "?";
}

ModeFamily mode_family_from_string(const std::string& s) {
    if (s == "TEM" || s == "tem") return ModeFamily::TEM;
    if (s == "TE" || s == "te") return ModeFamily::TE;
    if (s == "TM" || s == "tm") return ModeFamily::TM;
    throw ConfigError("unknown mode family '" + s + "'");
}

std::string ModeId::label() const {
    if (family == ModeFamily::TEM) return "TEM";
    return to_string(family) + std::to_string(n) + std::to_string(m);
}

double lossless_beta(double f_hz, double k_c, double eps_p, double mu_p) {
    double k = wavenumber(f_hz, eps_p, mu_p);
    double b2 = k * k - k_c * k_c;
    if (!(b2 > 0))
        throw DomainError("mode below cutoff: f=" + std::to_string(f_hz) +
                          " Hz, kc=" + std::to_string(k_c) + " 1/m");
    return std::sqrt(b2);
}

std::vector<ModeDispersion> find_cutoffs(const CoaxGeometry& geom,
                                         ModeFamily family, int max_n,
                                         double max_f_hz) {
    geom.validate();
    if (!(max_f_hz > 0)) throw DomainError("find_cutoffs: max_f must be > 0");

    if (family == ModeFamily::TEM)
        return {ModeDispersion{ModeId{ModeFamily::TEM, 0, 0}, 0.0, 0.0}};

    double a = geom.inner_radius_m, b = geom.outer_radius_m;
    double em = geom.dielectric.eps_p(max_f_hz, true) *
                geom.dielectric.mu_p(max_f_hz, true);
    double kc_max = 2.0 * pi * max_f_hz * std::sqrt(em) / light_speed;

    std::vector<ModeDispersion> out;
    constexpr int n_hard_cap = 512;
    for (int n = 0; max_n < 0 || n <= max_n; ++n) {
        if (n > n_hard_cap)
            throw NumericError("find_cutoffs: azimuthal order cap exceeded");
        auto roots = scan_roots(family, n, a, b, kc_max);
        // First roots move up with n; once an order >= 1 has none, higher
        // orders cannot contribute below kc_max either.
        if (roots.empty() && n >= 1) {
            if (max_n < 0) break;
            continue;
        }
        for (size_t m = 0; m < roots.size(); ++m) {
            ModeDispersion md;
            md.mode = ModeId{family, n, static_cast<int>(m) + 1};
            md.k_c = roots[m].kc;
            md.f_c = cutoff_frequency_for(md.k_c, geom.dielectric);
            if (md.f_c <= max_f_hz) out.push_back(md);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ModeDispersion& x, const ModeDispersion& y) {
                  return x.f_c < y.f_c;
              });
    return out;
}

ModeLoss::ModeLoss(const CoaxGeometry& geom, const ModeDispersion& mode)
    : mode_(mode),
      a_(geom.inner_radius_m),
      b_(geom.outer_radius_m),
      conductor_(geom.conductor),
      dielectric_(geom.dielectric) {
    geom.validate();
    if (mode.mode.family == ModeFamily::TEM)
        throw DomainError("ModeLoss: TEM handled by attenuation_tem");
    if (!(mode.k_c > 0)) throw DomainError("ModeLoss: kc must be positive");

    const int n = mode.mode.n;
    const double kc = mode.k_c;
    const double xa = kc * a_, xb = kc * b_;
    const BesselEval eb = bessel_eval(n, xb);

    if (mode.mode.family == ModeFamily::TE) {
        // R(x) = Jn(x) Yn'(kc b) - Jn'(kc b) Yn(x); R'(kc a) = R'(kc b) = 0
        // at a cutoff root. The Yn'(kc b) normalization cancels in Pl/P0.
        const double cj = eb.jp, cy = eb.yp;
        auto radial = [&](double x) {
            BesselEval e = bessel_eval(n, x);
            return e.j * cy - cj * e.y;
        };
        double ra = radial(xa), rb = radial(xb);
        wall_a_sq_ = ra * ra;
        wall_b_sq_ = rb * rb;
        auto integrand = [&](double x) {
            BesselEval e = bessel_eval(n, x);
            double r = e.j * cy - cj * e.y;
            double rp = e.jp * cy - cj * e.yp;
            return (n * n) * r * r / x + x * rp * rp;
        };
        i0_ = integrate_adaptive(integrand, xa, xb, 1e-10, 1e-9).value;
    } else {
        // S(x) = Jn(x) Yn(kc b) - Jn(kc b) Yn(x); S(kc a) = S(kc b) = 0
        // at a cutoff root.
        const double cj = eb.j, cy = eb.y;
        auto sderiv = [&](double x) {
            BesselEval e = bessel_eval(n, x);
            return e.jp * cy - cj * e.yp;
        };
        double sa = sderiv(xa), sb = sderiv(xb);
        wall_a_sq_ = sa * sa;
        wall_b_sq_ = sb * sb;
        auto integrand = [&](double x) {
            BesselEval e = bessel_eval(n, x);
            double s = e.j * cy - cj * e.y;
            double sp = e.jp * cy - cj * e.yp;
            return x * sp * sp + (n * n) * s * s / x;
        };
        i0_ = integrate_adaptive(integrand, xa, xb, 1e-10, 1e-9).value;
    }
    if (!(i0_ > 0))
        throw NumericError("ModeLoss: non-positive power-flow integral for " +
                           mode.mode.label());
}

PowerIntegrals ModeLoss::power(double f_hz, double amplitude) const {
    const double omega = 2.0 * pi * f_hz;
    const double eps_p = dielectric_.eps_p(f_hz);
    const double mu_p = dielectric_.mu_p(f_hz);
    const double kc = mode_.k_c;
    const double beta = lossless_beta(f_hz, kc, eps_p, mu_p);
    const double rs = surface_resistance(f_hz, conductor_);
    const double amp2 = amplitude * amplitude;
    const double kc4 = kc * kc * kc * kc;
    const int n = mode_.mode.n;

    PowerIntegrals p;
    if (mode_.mode.family == ModeFamily::TE) {
        p.p0_w = pi * omega * mu0 * mu_p * beta * amp2 * i0_ / (2.0 * kc4);
        double ga = 1.0 + beta * beta * n * n / (kc4 * a_ * a_);
        double gb = 1.0 + beta * beta * n * n / (kc4 * b_ * b_);
        p.pl_w_per_m =
            pi * amp2 * rs / 2.0 * (a_ * ga * wall_a_sq_ + b_ * gb * wall_b_sq_);
    } else {
        p.p0_w = pi * omega * eps0 * eps_p * beta * amp2 * i0_ / (2.0 * kc4);
        double e2 = eps0 * eps_p * omega;
        p.pl_w_per_m = pi * rs * e2 * e2 * amp2 / (2.0 * kc * kc) *
                       (a_ * wall_a_sq_ + b_ * wall_b_sq_);
    }
    return p;
}

AttenuationResult ModeLoss::at(double f_hz) const {
    const double eps_p = dielectric_.eps_p(f_hz);
    const double mu_p = dielectric_.mu_p(f_hz);
    const double k = wavenumber(f_hz, eps_p, mu_p);
    const double beta = lossless_beta(f_hz, mode_.k_c, eps_p, mu_p);
    PowerIntegrals p = power(f_hz, 1.0);

    AttenuationResult r;
    r.alpha_c_db_per_m = np_to_db * p.pl_w_per_m / (2.0 * p.p0_w);
    r.alpha_d_db_per_m =
        np_to_db * k * k * dielectric_.tan_delta(f_hz) / (2.0 * beta);
    return r;
}

AttenuationResult attenuation_tem(const CoaxGeometry& geom, double f_hz) {
    geom.validate();
    if (!(f_hz > 0)) throw DomainError("attenuation_tem: f must be > 0");
    const double a = geom.inner_radius_m, b = geom.outer_radius_m;
    const double eps_p = geom.dielectric.eps_p(f_hz);
    const double mu_p = geom.dielectric.mu_p(f_hz);
    const double omega = 2.0 * pi * f_hz;
    const double rs = surface_resistance(f_hz, geom.conductor);
    const double z0 =
        std::sqrt(mu0 * mu_p / (eps0 * eps_p)) * std::log(b / a) / (2.0 * pi);

    AttenuationResult r;
    r.alpha_c_db_per_m = np_to_db * rs / (4.0 * pi * z0) * (1.0 / a + 1.0 / b);
    r.alpha_d_db_per_m = np_to_db * pi * omega * eps0 * eps_p *
                         geom.dielectric.tan_delta(f_hz) * z0 / std::log(b / a);
    return r;
}

AttenuationResult attenuation_te(const CoaxGeometry& geom,
                                 const ModeDispersion& mode, double f_hz) {
    if (mode.mode.family != ModeFamily::TE)
        throw DomainError("attenuation_te: not a TE mode");
    return ModeLoss(geom, mode).at(f_hz);
}

AttenuationResult attenuation_tm(const CoaxGeometry& geom,
                                 const ModeDispersion& mode, double f_hz) {
    if (mode.mode.family != ModeFamily::TM)
        throw DomainError("attenuation_tm: not a TM mode");
    return ModeLoss(geom, mode).at(f_hz);
}

AttenuationResult attenuation(const CoaxGeometry& geom,
                              const ModeDispersion& mode, double f_hz) {
    switch (mode.mode.family) {
        case ModeFamily::TEM: return attenuation_tem(geom, f_hz);
        case ModeFamily::TE: return attenuation_te(geom, mode, f_hz);
        case ModeFamily::TM: return attenuation_tm(geom, mode, f_hz);
    }
    throw DomainError("attenuation: unknown mode family");
}

PowerIntegrals power_integrals(const CoaxGeometry& geom,
                               const ModeDispersion& mode, double f_hz,
                               double amplitude) {
    if (mode.mode.family == ModeFamily::TEM) {
        geom.validate();
        const double a = geom.inner_radius_m, b = geom.outer_radius_m;
        const double eps_p = geom.dielectric.eps_p(f_hz);
        const double mu_p = geom.dielectric.mu_p(f_hz);
        const double eta = std::sqrt(mu0 * mu_p / (eps0 * eps_p));
        const double rs = surface_resistance(f_hz, geom.conductor);
        const double amp2 = amplitude * amplitude;
        PowerIntegrals p;
        p.p0_w = pi * amp2 * std::log(b / a) / eta;
        p.pl_w_per_m = pi * amp2 * rs / (eta * eta) * (1.0 / a + 1.0 / b);
        return p;
    }
    return ModeLoss(geom, mode).power(f_hz, amplitude);
}

} // namespace coaxflux
