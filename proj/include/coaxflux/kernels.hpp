#pragma once

#include <cstddef>

namespace coaxflux::kernels {

/// Data-parallel inner loops of the flux pipeline. Every entry has a scalar
/// reference implementation and, on x86-64 with AVX2+FMA, a vectorized
/// variant selected at runtime. Both variants are equivalence-tested; the
/// scalar path is the semantic reference.
struct Backend {
    const char* name;

    /// out[i] = 1 / (exp(h f[i] / kB T) - 1), the thermal photon occupation.
    void (*bose_einstein_batch)(const double* f_hz, std::size_t n, double t_k,
                                double* out);

    /// One fixed step h of dN/dx = rate (g(x) - N) with g sampled at the
    /// step start (g0), midpoint (gh) and end (g1). Uses the classical RK4
    /// update; lanes with rate*h > 1 (stiff, far inside the relaxation
    /// regime) take the exact exponential update for a linearized g.
    void (*relax_step_batch)(double* n_occ, const double* rate,
                             const double* g0, const double* gh,
                             const double* g1, double h, std::size_t n);

    /// Attenuator jump: N <- N/A + (1 - 1/A) nbe, with inv_a = 1/A.
    void (*attenuator_jump_batch)(double* n_occ, const double* nbe,
                                  double inv_a, std::size_t n);

    /// Trapezoidal integral of y over x (n >= 2).
    double (*trapezoid)(const double* x, const double* y, std::size_t n);
};

/// Scalar reference backend (always available).
const Backend& scalar_backend();

/// AVX2 backend or nullptr when unsupported by the build or the CPU.
const Backend* avx2_backend();

/// Runtime-selected backend. Honors COAXFLUX_KERNELS=scalar|avx2|auto
/// (default auto); requesting avx2 on an unsupported CPU throws.
const Backend& active_backend();

/// Overrides the selection programmatically (tests, CLI flag).
/// name: "auto", "scalar" or "avx2".
void select_backend(const char* name);

} // namespace coaxflux::kernels
