#pragma once

// Test-side oracles, independent of the library's solution paths:
//  - dense sign-scan + bisection root finder for the cutoff cross-products
//  - fixed-grid composite Simpson quadrature
//  - closed-form solution of the constant-coefficient occupation ODE
//  - high-temperature series for the thermal occupation

#include <cmath>
#include <functional>
#include <vector>

#include "coaxflux/bessel.hpp"
#include "coaxflux/constants.hpp"
#include "coaxflux/modes.hpp"

namespace oracles {

// All sign-change roots of f on [lo, hi], scanned at `samples` points and
// bisected down to a bracket width of rel_width * root.
inline std::vector<double> scan_roots(const std::function<double(double)>& f,
                                      double lo, double hi, int samples,
                                      double rel_width = 1e-9) {
    std::vector<double> roots;
    double x_prev = lo, f_prev = f(lo);
    for (int i = 1; i <= samples; ++i) {
        double x = lo + (hi - lo) * i / samples;
        double fx = f(x);
        if (f_prev * fx < 0.0) {
            double a = x_prev, b = x, fa = f_prev;
            while (b - a > rel_width * b) {
                double m = 0.5 * (a + b);
                double fm = f(m);
                if (fa * fm <= 0.0) b = m;
                else { a = m; fa = fm; }
            }
            roots.push_back(0.5 * (a + b));
        }
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

// Cutoff roots for one azimuthal order via the oracle scanner, with a grid
// four times finer than the production scan.
inline std::vector<double> cutoff_roots(coaxflux::ModeFamily family, int n,
                                        double a, double b, double kc_max) {
    auto f = [&](double kc) {
        return family == coaxflux::ModeFamily::TE
                   ? coaxflux::bessel_cross_te(n, kc * a, kc * b)
                   : coaxflux::bessel_cross_tm(n, kc * a, kc * b);
    };
    double step = coaxflux::constants::pi / (b - a) / 80.0;
    int samples = static_cast<int>(kc_max / step) + 1;
    return scan_roots(f, step, kc_max, samples);
}

// Composite Simpson on a fixed grid (n panels, n even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 100000) {
    if (panels % 2) ++panels;
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Exact solution of dN/dx = r (g - N) with constant g over length L.
inline double relax_const(double n_in, double g, double alpha_db_per_m,
                          double length_m) {
    double r = alpha_db_per_m * std::log(10.0) / 10.0;
    return g + (n_in - g) * std::exp(-r * length_m);
}

// kT/(hf) - 1/2 + (hf/kT)/12, the high-temperature expansion of the
// Bose-Einstein occupation.
inline double occupation_series(double f_hz, double t_k) {
    double x = coaxflux::constants::planck * f_hz /
               (coaxflux::constants::boltzmann * t_k);
    return 1.0 / x - 0.5 + x / 12.0;
}

} // namespace oracles
