#include "coaxflux/quadrature.hpp"

#include <cmath>

#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

struct Workspace {
    const std::function<double(double)>& f;
    double abs_tol;
    double rel_tol;
    int max_depth;
    long evaluations = 0;
    double error_sum = 0;

    double eval(double x) {
        ++evaluations;
        return f(x);
    }

    // One panel with precomputed endpoint/midpoint values and its Simpson sum.
    double panel(double a, double b, double fa, double fm, double fb,
                 double whole, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        double flm = eval(lm);
        double frm = eval(rm);
        double h6 = (b - a) / 12.0;
        double left = h6 * (fa + 4.0 * flm + fm);
        double right = h6 * (fm + 4.0 * frm + fb);
        double delta = left + right - whole;
        double tol = std::max(abs_tol, rel_tol * std::fabs(left + right));
        if (std::fabs(delta) <= 15.0 * tol || depth >= max_depth) {
            if (depth >= max_depth && std::fabs(delta) > 15.0 * tol)
                throw NumericError("integrate_adaptive: depth limit reached "
                                   "without convergence");
            error_sum += std::fabs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return panel(a, m, fa, flm, fm, left, depth + 1) +
               panel(m, b, fm, frm, fb, right, depth + 1);
    }
};

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol, int max_depth) {
    if (!(b > a)) throw DomainError("integrate_adaptive: requires b > a");
    Workspace ws{f, abs_tol, rel_tol, max_depth};
    double m = 0.5 * (a + b);
    double fa = ws.eval(a);
    double fm = ws.eval(m);
    double fb = ws.eval(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double value = ws.panel(a, b, fa, fm, fb, whole, 0);
    return {value, ws.error_sum, ws.evaluations};
}

} // namespace coaxflux
