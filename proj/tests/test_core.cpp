#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "coaxflux/bessel.hpp"
#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/material.hpp"
#include "coaxflux/presets.hpp"
#include "coaxflux/quadrature.hpp"
#include "oracles.hpp"

using namespace coaxflux;
namespace k = coaxflux::constants;

TEST_CASE("physical constants") {
    CHECK(std::fabs(k::z_vac - std::sqrt(k::mu0 / k::eps0)) <=
          1e-12 * k::z_vac);
    CHECK(k::z_vac == doctest::Approx(376.730313668).epsilon(1e-9));
    CHECK(std::fabs(k::np_to_db - 20.0 * std::log10(std::exp(1.0))) < 1e-14);
    CHECK(k::planck > 0);
    CHECK(k::hbar == doctest::Approx(k::planck / (2 * k::pi)).epsilon(1e-12));
}

TEST_CASE("ptfe constants") {
    MaterialSpectrum m = ptfe();
    auto p = m.interpolate(37e9);
    CHECK(p.eps_r.real() == doctest::Approx(2.08));
    CHECK(-p.eps_r.imag() == doctest::Approx(2.08 * 0.0004));
    CHECK(p.mu_r == std::complex<double>(1.0, 0.0));
    CHECK(m.tan_delta(5e9) == doctest::Approx(0.0004).epsilon(1e-12));
}

TEST_CASE("interpolation identity and midpoint") {
    MaterialSpectrum one = MaterialSpectrum::tabulated(
        "one-row", MaterialKind::Dielectric, {{5e9, 3.5, 0.01, 1.2, 0.02}});
    auto p = one.interpolate(5e9);
    CHECK(p.eps_r.real() == 3.5);
    CHECK(p.mu_r.real() == 1.2);

    MaterialSpectrum two = MaterialSpectrum::tabulated(
        "two-row", MaterialKind::Dielectric,
        {{1e9, 4.0, 0.0, 1.0, 0.0}, {3e9, 6.0, 0.0, 1.0, 0.0}});
    CHECK(two.eps_p(2e9) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(two.eps_p(1e9) == 4.0);
    CHECK(two.eps_p(3e9) == 6.0);
}

TEST_CASE("interpolation monotone and passive between nodes") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<MaterialRow> rows;
    double e = 2.0;
    for (int i = 0; i < 8; ++i) {
        e += u(rng); // increasing eps'
        rows.push_back({(1.0 + i) * 1e9, e, u(rng), 1.0 + u(rng), u(rng)});
    }
    MaterialSpectrum m =
        MaterialSpectrum::tabulated("rand", MaterialKind::Absorber, rows);
    double prev = 0;
    for (double f = 1e9; f <= 8e9; f += 37e6) {
        double ep = m.eps_p(f);
        CHECK(ep >= prev - 1e-12);
        prev = ep;
        auto p = m.interpolate(f);
        CHECK(-p.eps_r.imag() >= 0.0);
        CHECK(-p.mu_r.imag() >= 0.0);
    }
}

TEST_CASE("material validation and range errors") {
    CHECK_THROWS_AS(MaterialSpectrum::tabulated(
                        "bad-order", MaterialKind::Dielectric,
                        {{2e9, 2, 0, 1, 0}, {1e9, 2, 0, 1, 0}}),
                    DomainError);
    CHECK_THROWS_AS(MaterialSpectrum::tabulated("neg-loss",
                                                MaterialKind::Dielectric,
                                                {{1e9, 2, -0.1, 1, 0}}),
                    DomainError);
    CHECK_THROWS_AS(MaterialSpectrum::tabulated(
                        "thin", MaterialKind::Dielectric, {{1e9, 0.5, 0, 1, 0}}),
                    DomainError);

    MaterialSpectrum two = MaterialSpectrum::tabulated(
        "two", MaterialKind::Dielectric,
        {{1e9, 4.0, 0.0, 1.0, 0.0}, {3e9, 6.0, 0.0, 1.0, 0.0}});
    CHECK_THROWS_AS(two.interpolate(0.5e9), DomainError);
    CHECK(two.eps_p(0.5e9, true) == 4.0); // clamped
    CHECK(two.eps_p(9e9, true) == 6.0);
}

TEST_CASE("material csv round trip") {
    const char* path = "core_material_tmp.csv";
    {
        std::ofstream out(path);
        out << "# provenance note\n";
        out << "f_hz,eps_p,eps_pp,mu_p,mu_pp,extra\n";
        out << "1e9,4.0,0.1,1.5,0.2,99\n";
        out << "2e9,4.5,0.2,1.4,0.1,98\n";
    }
    MaterialSpectrum m = MaterialSpectrum::from_csv(path, "t");
    CHECK(m.table().size() == 2);
    CHECK(m.eps_p(1.5e9) == doctest::Approx(4.25));
    std::remove(path);

    {
        std::ofstream out(path);
        out << "f_hz,eps_p\n1e9,4.0\n";
    }
    CHECK_THROWS_AS(MaterialSpectrum::from_csv(path, "t"), ParseError);
    std::remove(path);
}

TEST_CASE("conductor config") {
    const char* path = "core_conductor_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# stainless\nsigma_s_per_m = 1.41e6\n";
    }
    MaterialSpectrum c = MaterialSpectrum::conductor_from_config(path, "ss");
    CHECK(c.sigma() == doctest::Approx(1.41e6));
    std::remove(path);
    {
        std::ofstream out(path);
        out << "mu_p = 1.0\n";
    }
    CHECK_THROWS_AS(MaterialSpectrum::conductor_from_config(path, "ss"),
                    ParseError);
    std::remove(path);
}

TEST_CASE("wronskian identity over the working domain") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ux(-2.0, 4.0);
    std::uniform_int_distribution<int> un(0, 8);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        int n = un(rng);
        double x = std::pow(10.0, ux(rng));
        BesselEval e = bessel_eval(n, x); // throws beyond 1e-10 internally
        worst = std::max(worst, e.wronskian_residual());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("bessel eval domain errors") {
    CHECK_THROWS_AS(bessel_eval(-1, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_eval(0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_eval(0, -2.0), DomainError);
}

TEST_CASE("te cross product near the published ut086 root") {
    const double a = 0.255e-3, b = 0.835e-3;
    // root adjacent to the rounded catalog value 1887 1/m
    auto roots = oracles::cutoff_roots(ModeFamily::TE, 1, a, b, 2200.0);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(1887.0).epsilon(5e-4));
    double scale = std::fabs(bessel_cross_te(1, roots[0] * 1.02 * a,
                                             roots[0] * 1.02 * b));
    CHECK(std::fabs(bessel_cross_te(1, roots[0] * a, roots[0] * b)) <
          1e-6 * scale);

    // no root and a consistent sign below the first root
    double sign = bessel_cross_te(1, 0.05 * roots[0] * a, 0.05 * roots[0] * b);
    for (double t = 0.05; t < 0.95; t += 0.05) {
        double v = bessel_cross_te(1, t * roots[0] * a, t * roots[0] * b);
        CHECK(v * sign > 0.0);
    }
}

TEST_CASE("tm cross product at published ut086 roots") {
    const double a = 0.255e-3, b = 0.835e-3;
    auto roots0 = oracles::cutoff_roots(ModeFamily::TM, 0, a, b, 6000.0);
    REQUIRE(!roots0.empty());
    CHECK(roots0[0] == doctest::Approx(5328.0).epsilon(5e-4));
    double scale = std::fabs(bessel_cross_tm(0, roots0[0] * 1.02 * a,
                                             roots0[0] * 1.02 * b));
    CHECK(std::fabs(bessel_cross_tm(0, roots0[0] * a, roots0[0] * b)) <
          1e-6 * scale);

    // TM11 cutoff frequency (PTFE-filled) against the catalog value
    auto roots1 = oracles::cutoff_roots(ModeFamily::TM, 1, a, b, 6000.0);
    REQUIRE(!roots1.empty());
    double fc = roots1[0] * constants::light_speed /
                (2 * constants::pi * std::sqrt(2.08));
    CHECK(fc == doctest::Approx(187.8e9).epsilon(5e-3));
}

TEST_CASE("adaptive quadrature against known integrals") {
    auto r1 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                 constants::pi);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));
    auto r2 = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 3.0);
    CHECK(r2.value == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-12));
    auto osc = [](double x) { return std::cos(20.0 * x) / (1.0 + x * x); };
    auto r3 = integrate_adaptive(osc, 0.0, 5.0);
    CHECK(r3.value == doctest::Approx(oracles::simpson(osc, 0.0, 5.0, 200000))
                          .epsilon(1e-9));
    CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0),
                    DomainError);
}
