#include <doctest.h>

#include <cmath>
#include <random>

#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/flux.hpp"
#include "coaxflux/kernels.hpp"
#include "coaxflux/presets.hpp"
#include "oracles.hpp"

using namespace coaxflux;
namespace k = coaxflux::constants;

TEST_CASE("occupation identities") {
    // h f = kB T ln 2  =>  exactly one photon
    double t = 1.3;
    double f = k::boltzmann * t * std::log(2.0) / k::planck;
    CHECK(bose_einstein(f, t) == doctest::Approx(1.0).epsilon(1e-12));

    // high-temperature series at 100 GHz / 300 K
    double n = bose_einstein(100e9, 300.0);
    CHECK(n == doctest::Approx(oracles::occupation_series(100e9, 300.0))
                   .epsilon(1e-6));
    CHECK(n == doctest::Approx(62.01).epsilon(1e-3));

    // freezes out at low temperature
    CHECK(bose_einstein(100e9, 1e-3) == 0.0);

    CHECK_THROWS_AS(bose_einstein(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bose_einstein(1e9, 0.0), DomainError);
}

TEST_CASE("occupation monotonicity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uf(1e9, 5e11);
    std::uniform_real_distribution<double> ut(0.01, 300.0);
    for (int i = 0; i < 300; ++i) {
        double f = uf(rng), t = ut(rng);
        CHECK(bose_einstein(f, t * 1.01) > bose_einstein(f, t));
        CHECK(bose_einstein(f * 1.01, t) < bose_einstein(f, t));
    }
}

TEST_CASE("zero attenuation leaves the occupation untouched") {
    StageSegment seg{300.0, 35.0, 0.228, 0.0};
    double n_in = 17.25;
    CHECK(propagate_segment(n_in, seg, 0.0, 96e9) == n_in);
}

TEST_CASE("constant-temperature segment matches the closed form") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.0, 120.0);
    std::uniform_real_distribution<double> ul(0.05, 1.0);
    std::uniform_real_distribution<double> ut(0.5, 300.0);
    std::uniform_real_distribution<double> uf(10e9, 600e9);
    std::uniform_real_distribution<double> un(0.0, 80.0);
    for (int i = 0; i < 200; ++i) {
        double alpha = ua(rng), len = ul(rng), t = ut(rng), f = uf(rng);
        StageSegment seg{t, t, len, 0.0};
        double n_in = un(rng);
        double got = propagate_segment(n_in, seg, alpha, f);
        double want = oracles::relax_const(n_in, bose_einstein(f, t), alpha, len);
        CHECK(std::fabs(got - want) < 1e-8);
    }
}

TEST_CASE("huge attenuation fully thermalizes") {
    StageSegment seg{4.0, 4.0, 0.25, 0.0};
    double f = 96e9;
    double got = propagate_segment(50.0, seg, 4000.0, f); // 1000 dB total
    CHECK(std::fabs(got - bose_einstein(f, 4.0)) < 1e-12);
}

TEST_CASE("attenuator jump identities") {
    CHECK(apply_attenuator(0.7312, 0.0, 4.0, 96e9) == 0.7312);
    // 20 dB, negligible thermal term
    CHECK(apply_attenuator(1.0, 20.0, 1e-3, 96e9) ==
          doctest::Approx(0.01).epsilon(1e-12));
    // infinite attenuation thermalizes exactly
    double nbe = bose_einstein(96e9, 2.85);
    CHECK(std::fabs(apply_attenuator(55.0, 4000.0, 2.85, 96e9) - nbe) < 1e-12);
    CHECK_THROWS_AS(apply_attenuator(1.0, -1.0, 4.0, 96e9), DomainError);
}

TEST_CASE("propagate agrees between kernel backends") {
    if (!kernels::avx2_backend()) return;
    StageSegment seg{300.0, 35.0, 0.228, 0.0};
    kernels::select_backend("scalar");
    double a = propagate_segment(60.0, seg, 40.0, 96e9);
    kernels::select_backend("avx2");
    double b = propagate_segment(60.0, seg, 40.0, 96e9);
    kernels::select_backend("auto");
    CHECK(a == doctest::Approx(b).epsilon(1e-11));
}

TEST_CASE("chain flux structure and validation") {
    CryostatChain chain = default_chain();
    CHECK(chain.base_temperature_k() == doctest::Approx(0.006));
    CHECK_NOTHROW(chain.validate());
    CryostatChain broken = chain;
    broken.stages[1].t_hot_k = 34.0;
    CHECK_THROWS_AS(broken.validate(), DomainError);

    std::vector<ModeChannel> chans;
    CHECK_THROWS_AS(
        chain_flux(chain, chans, {82e9, 110e9}, AttenuatorScenario::Active),
        DomainError);

    chans.push_back({ModeId{ModeFamily::TEM, 0, 0}, 0.0,
                     [](double) { return 40.0; }});
    chans.push_back({ModeId{ModeFamily::TE, 1, 1}, 95e9,
                     [](double) { return 55.0; }});
    FluxOptions opts;
    opts.grid_spacing_hz = 1e9;
    opts.ode_steps_per_segment = 200;
    FluxSpectrum s =
        chain_flux(chain, chans, {82e9, 110e9}, AttenuatorScenario::Active,
                   opts);

    REQUIRE(s.per_mode.size() == 2);
    for (std::size_t i = 0; i < s.f_hz.size(); ++i) {
        CHECK(s.summed[i] ==
              doctest::Approx(s.per_mode[0][i] + s.per_mode[1][i]));
        CHECK(s.summed[i] >= 0.0);
        if (s.f_hz[i] <= 95e9) CHECK(s.per_mode[1][i] == 0.0);
    }
    // a node straddles the in-band cutoff from above
    bool has_cut_node = false;
    for (double f : s.f_hz)
        if (f > 95e9 && f < 95e9 * (1 + 1e-8)) has_cut_node = true;
    CHECK(has_cut_node);

    // band integral equals a direct trapezoid of the summed spectrum
    double acc = 0;
    for (std::size_t i = 0; i + 1 < s.f_hz.size(); ++i)
        acc += 0.5 * (s.summed[i] + s.summed[i + 1]) *
               (s.f_hz[i + 1] - s.f_hz[i]);
    CHECK(s.band_flux_per_s == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("more attenuation never increases the arriving occupation") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ua(5.0, 80.0);
    std::uniform_real_distribution<double> ul(0.05, 0.5);
    std::uniform_real_distribution<double> uatt(0.0, 30.0);
    std::uniform_real_distribution<double> utemp(0.0, 1.0);
    FluxOptions opts;
    opts.grid_spacing_hz = 2e9;
    opts.ode_steps_per_segment = 150;
    for (int rep = 0; rep < 8; ++rep) {
        // random chain: monotone random stage temperatures, random lengths
        // and attenuators
        CryostatChain chain;
        int n_stages = 3 + static_cast<int>(3 * utemp(rng));
        std::vector<double> temps = {300.0};
        for (int i = 0; i < n_stages; ++i)
            temps.push_back(temps.back() * (0.02 + 0.3 * utemp(rng)));
        for (int i = 0; i < n_stages; ++i)
            chain.stages.push_back(
                {temps[static_cast<std::size_t>(i)],
                 temps[static_cast<std::size_t>(i) + 1], ul(rng),
                 rep % 2 ? uatt(rng) : 0.0});
        chain.validate();

        double alpha = ua(rng);
        double bump = 1.0 + 3.0 * (rep + 1) / 8.0;
        std::vector<ModeChannel> lo = {{ModeId{ModeFamily::TEM, 0, 0}, 0.0,
                                        [alpha](double) { return alpha; }}};
        std::vector<ModeChannel> hi = {{ModeId{ModeFamily::TEM, 0, 0}, 0.0,
                                        [alpha, bump](double) {
                                            return alpha * bump;
                                        }}};
        auto s_lo = chain_flux(chain, lo, {82e9, 110e9},
                               AttenuatorScenario::Active, opts);
        auto s_hi = chain_flux(chain, hi, {82e9, 110e9},
                               AttenuatorScenario::Active, opts);
        for (std::size_t i = 0; i < s_lo.f_hz.size(); ++i)
            CHECK(s_hi.summed[i] <= s_lo.summed[i] * (1 + 1e-12));
    }
}

TEST_CASE("channel builder covers the mode families") {
    CoaxGeometry g = cable_preset("ut086");
    auto all = cable_channels(g, 200e9, true, true, true);
    int tem = 0, te = 0, tm = 0;
    for (const auto& c : all) {
        if (c.mode.family == ModeFamily::TEM) ++tem;
        else if (c.mode.family == ModeFamily::TE) ++te;
        else ++tm;
        double probe = std::max(c.f_c_hz * 1.05, 5e9);
        CHECK(c.alpha_db_per_m(probe) > 0.0);
    }
    CHECK(tem == 1);
    CHECK(te >= 3);  // TE11, TE21, TE31 below 200 GHz
    CHECK(tm >= 2);  // TM01, TM11 below 200 GHz
    CHECK(cable_channels(g, 200e9, true, true, false).size() ==
          static_cast<std::size_t>(1 + te));
}

TEST_CASE("thinner cables carry strictly less noise") {
    FluxOptions opts;
    opts.grid_spacing_hz = 2e9;
    opts.ode_steps_per_segment = 250;
    CryostatChain chain = default_chain();
    auto run = [&](const std::string& id) {
        auto geom = cable_preset(id);
        return chain_flux(chain, cable_channels(geom, 110e9), {82e9, 110e9},
                          AttenuatorScenario::Active, opts);
    };
    auto s86 = run("ut086");
    auto s47 = run("ut047");
    auto s34 = run("ut034");
    CHECK(s47.band_flux_per_s < s86.band_flux_per_s);
    CHECK(s34.band_flux_per_s < s47.band_flux_per_s);
    CHECK(s34.band_flux_per_s > 1e-3); // still far above the filtered level
}

TEST_CASE("ode resolution is converged") {
    CryostatChain chain = default_chain();
    auto geom = cable_preset("ut086");
    auto chans = cable_channels(geom, 110e9);
    FluxOptions o1, o2;
    o1.grid_spacing_hz = o2.grid_spacing_hz = 1e9;
    o1.ode_steps_per_segment = 1000;
    o2.ode_steps_per_segment = 2000;
    auto s1 = chain_flux(chain, chans, {82e9, 110e9},
                         AttenuatorScenario::Active, o1);
    auto s2 = chain_flux(chain, chans, {82e9, 110e9},
                         AttenuatorScenario::Active, o2);
    CHECK(std::fabs(s1.band_flux_per_s - s2.band_flux_per_s) <
          1e-3 * s2.band_flux_per_s);
}
