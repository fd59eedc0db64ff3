#pragma once

namespace coaxflux {

/// J_n, Y_n and their derivatives evaluated together at one point.
struct BesselEval {
    int order;
    double x;
    double j;  // J_n(x)
    double y;  // Y_n(x)
    double jp; // J_n'(x)
    double yp; // Y_n'(x)

    /// Relative residual of J_n Y_n' - J_n' Y_n = 2/(pi x).
    double wronskian_residual() const;
};

/// Evaluates the integer-order Bessel pair; throws DomainError for x <= 0 or
/// n < 0 and NumericError if the Wronskian identity fails beyond 1e-10.
BesselEval bessel_eval(int n, double x);

/// TE cutoff function: J_n'(kc a) Y_n'(kc b) - J_n'(kc b) Y_n'(kc a).
/// Sign changes in kc bracket TE cutoff wavevectors.
double bessel_cross_te(int n, double kc_a, double kc_b);

/// TM cutoff function: J_n(kc a) Y_n(kc b) - J_n(kc b) Y_n(kc a).
double bessel_cross_tm(int n, double kc_a, double kc_b);

} // namespace coaxflux
