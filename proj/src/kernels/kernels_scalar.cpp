#include <cmath>
#include <cstddef>

#include "coaxflux/constants.hpp"
#include "coaxflux/kernels.hpp"

// Reference implementations. These define the semantics the vector variants
// are tested against.

namespace coaxflux::kernels {

namespace {

void bose_einstein_batch_scalar(const double* f_hz, std::size_t n, double t_k,
                                double* out) {
    const double coef = constants::planck / (constants::boltzmann * t_k);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = 1.0 / std::expm1(coef * f_hz[i]);
}

void relax_step_batch_scalar(double* n_occ, const double* rate,
                             const double* g0, const double* gh,
                             const double* g1, double h, std::size_t n) {
    const double half_h = 0.5 * h;
    const double sixth_h = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rate[i];
        const double rh = r * h;
        double v = n_occ[i];
        if (rh <= 1.0) {
            const double k1 = r * (g0[i] - v);
            const double k2 = r * (gh[i] - (v + half_h * k1));
            const double k3 = r * (gh[i] - (v + half_h * k2));
            const double k4 = r * (g1[i] - (v + h * k3));
            v += sixth_h * (k1 + 2.0 * (k2 + k3) + k4);
        } else {
            // Exact update for g linearized over the step; the RK4 stability
            // limit is irrelevant this deep in the relaxation regime.
            const double em = std::exp(-rh);
            const double slope_over_r = (g1[i] - g0[i]) / rh;
            v = g1[i] - slope_over_r + (v - g0[i] + slope_over_r) * em;
        }
        n_occ[i] = v;
    }
}

void attenuator_jump_batch_scalar(double* n_occ, const double* nbe,
                                  double inv_a, std::size_t n) {
    const double mix = 1.0 - inv_a;
    for (std::size_t i = 0; i < n; ++i)
        n_occ[i] = n_occ[i] * inv_a + mix * nbe[i];
}

double trapezoid_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return acc;
}

const Backend scalar_table = {
    "scalar",
    &bose_einstein_batch_scalar,
    &relax_step_batch_scalar,
    &attenuator_jump_batch_scalar,
    &trapezoid_scalar,
};

} // namespace

const Backend& scalar_backend() { return scalar_table; }

} // namespace coaxflux::kernels
