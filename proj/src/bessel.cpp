#include "coaxflux/bessel.hpp"

#include <cmath>
#include <string>

#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {
constexpr double wronskian_tolerance = 1e-10;
}

double BesselEval::wronskian_residual() const {
    double ref = 2.0 / (constants::pi * x);
    return std::fabs(j * yp - jp * y - ref) / std::fabs(ref);
}

BesselEval bessel_eval(int n, double x) {
    if (n < 0) throw DomainError("bessel_eval: order must be >= 0");
    if (!(x > 0)) throw DomainError("bessel_eval: argument must be > 0");

    double nu = static_cast<double>(n);
    BesselEval e;
    e.order = n;
    e.x = x;
    e.j = std::cyl_bessel_j(nu, x);
    e.y = std::cyl_neumann(nu, x);
    if (n == 0) {
        // J0' = -J1, Y0' = -Y1
        e.jp = -std::cyl_bessel_j(1.0, x);
        e.yp = -std::cyl_neumann(1.0, x);
    } else {
        // f_n'(x) = f_{n-1}(x) - (n/x) f_n(x)
        e.jp = std::cyl_bessel_j(nu - 1.0, x) - (nu / x) * e.j;
        e.yp = std::cyl_neumann(nu - 1.0, x) - (nu / x) * e.y;
    }
    double res = e.wronskian_residual();
    if (!(res < wronskian_tolerance))
        throw NumericError("bessel_eval: Wronskian residual " +
                           std::to_string(res) + " at n=" + std::to_string(n) +
                           " x=" + std::to_string(x));
    return e;
}

double bessel_cross_te(int n, double kc_a, double kc_b) {
    BesselEval ea = bessel_eval(n, kc_a);
    BesselEval eb = bessel_eval(n, kc_b);
    return ea.jp * eb.yp - eb.jp * ea.yp;
}

double bessel_cross_tm(int n, double kc_a, double kc_b) {
    BesselEval ea = bessel_eval(n, kc_a);
    BesselEval eb = bessel_eval(n, kc_b);
    return ea.j * eb.y - eb.j * ea.y;
}

} // namespace coaxflux
