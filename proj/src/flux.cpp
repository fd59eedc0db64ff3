#include "coaxflux/flux.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"
#include "coaxflux/kernels.hpp"

namespace coaxflux {

namespace {

using constants::boltzmann;
using constants::planck;

constexpr double ln10_over_10 = 0.23025850929940457; // ln(10)/10

struct ChannelState {
    std::size_t offset = 0;          // first grid index above cutoff
    std::vector<double> occupation;  // length = grid.size() - offset
    std::vector<double> rate;        // alpha * ln10/10 per grid point
};

// Advances every channel across one segment with shared thermal samples:
// the Bose-Einstein profile g(x) is evaluated once per step for the whole
// grid and each channel relaxes its own suffix.
void march_segment(const StageSegment& seg, int steps,
                   const std::vector<double>& grid,
                   std::vector<ChannelState>& channels,
                   const kernels::Backend& backend, std::vector<double>& g0,
                   std::vector<double>& gh, std::vector<double>& g1) {
    const std::size_t m = grid.size();
    const double h = seg.length_m / steps;
    const double t_span = seg.t_hot_k - seg.t_cold_k;
    auto temp_at = [&](double frac) { return seg.t_hot_k - t_span * frac; };

    backend.bose_einstein_batch(grid.data(), m, seg.t_hot_k, g0.data());
    for (int k = 0; k < steps; ++k) {
        const double f_mid = (k + 0.5) / steps;
        const double f_end = static_cast<double>(k + 1) / steps;
        backend.bose_einstein_batch(grid.data(), m, temp_at(f_mid), gh.data());
        backend.bose_einstein_batch(grid.data(), m, temp_at(f_end), g1.data());
        for (auto& ch : channels) {
            const std::size_t off = ch.offset;
            const std::size_t len = ch.occupation.size();
            if (len == 0) continue;
            backend.relax_step_batch(ch.occupation.data(), ch.rate.data(),
                                     g0.data() + off, gh.data() + off,
                                     g1.data() + off, h, len);
        }
        std::swap(g0, g1);
    }
}

} // namespace

void StageSegment::validate() const {
    if (!(length_m > 0)) throw DomainError("stage segment: length must be > 0");
    if (!(t_hot_k > 0) || !(t_cold_k > 0))
        throw DomainError("stage segment: temperatures must be > 0");
    if (attenuator_db < 0)
        throw DomainError("stage segment: attenuator must be >= 0 dB");
}

void CryostatChain::validate() const {
    if (stages.empty()) throw DomainError("cryostat chain: no stages");
    for (std::size_t i = 0; i < stages.size(); ++i) {
        stages[i].validate();
        if (i > 0) {
            double prev = stages[i - 1].t_cold_k;
            double cur = stages[i].t_hot_k;
            if (std::fabs(prev - cur) > 1e-9 * std::max(prev, cur))
                throw DomainError(
                    "cryostat chain: stage temperatures not contiguous at "
                    "stage " + std::to_string(i));
        }
    }
}

double CryostatChain::base_temperature_k() const {
    if (stages.empty()) throw DomainError("cryostat chain: no stages");
    return stages.back().t_cold_k;
}

double bose_einstein(double f_hz, double t_k) {
    if (!(f_hz > 0)) throw DomainError("bose_einstein: f must be > 0");
    if (!(t_k > 0)) throw DomainError("bose_einstein: T must be > 0");
    return 1.0 / std::expm1(planck * f_hz / (boltzmann * t_k));
}

double propagate_segment(double n_in, const StageSegment& seg,
                         double alpha_db_per_m, double f_hz, int steps) {
    seg.validate();
    if (!(alpha_db_per_m >= 0))
        throw DomainError("propagate_segment: alpha must be >= 0");
    if (steps < 1) throw DomainError("propagate_segment: steps must be >= 1");

    const kernels::Backend& backend = kernels::active_backend();
    std::vector<double> grid = {f_hz};
    std::vector<ChannelState> channels(1);
    channels[0].offset = 0;
    channels[0].occupation = {n_in};
    channels[0].rate = {alpha_db_per_m * ln10_over_10};
    std::vector<double> g0(1), gh(1), g1(1);
    march_segment(seg, steps, grid, channels, backend, g0, gh, g1);

    const double out = channels[0].occupation[0];
    const double nbe_hot = bose_einstein(f_hz, seg.t_hot_k);
    const double nbe_cold = bose_einstein(f_hz, seg.t_cold_k);
    const double lo = std::min({n_in, nbe_hot, nbe_cold});
    const double hi = std::max({n_in, nbe_hot, nbe_cold});
    const double slack = 1e-9 + 1e-6 * (hi - lo);
    if (!std::isfinite(out) || out < lo - slack || out > hi + slack) {
        std::ostringstream os;
        os << "propagate_segment: integration left the physical envelope ("
           << out << " not in [" << lo << ", " << hi << "]) with " << steps
           << " steps of " << seg.length_m / steps << " m";
        throw NumericError(os.str());
    }
    return out;
}

double apply_attenuator(double n_in, double a_db, double t_k, double f_hz) {
    if (a_db < 0) throw DomainError("apply_attenuator: a must be >= 0 dB");
    if (a_db == 0) return n_in;
    const double inv_a = std::pow(10.0, -a_db / 10.0);
    return n_in * inv_a + (1.0 - inv_a) * bose_einstein(f_hz, t_k);
}

std::vector<ModeChannel> cable_channels(const CoaxGeometry& geom,
                                        double max_f_hz, bool include_tem,
                                        bool include_te, bool include_tm) {
    geom.validate();
    std::vector<ModeChannel> channels;
    if (include_tem) {
        CoaxGeometry g = geom;
        channels.push_back({ModeId{ModeFamily::TEM, 0, 0}, 0.0,
                            [g](double f) {
                                return attenuation_tem(g, f).total_db_per_m();
                            }});
    }
    auto add_family = [&](ModeFamily family) {
        for (const ModeDispersion& md :
             find_cutoffs(geom, family, -1, max_f_hz)) {
            auto loss = std::make_shared<ModeLoss>(geom, md);
            channels.push_back({md.mode, md.f_c, [loss](double f) {
                                    return loss->at(f).total_db_per_m();
                                }});
        }
    };
    if (include_te) add_family(ModeFamily::TE);
    if (include_tm) add_family(ModeFamily::TM);
    return channels;
}

FluxSpectrum chain_flux(const CryostatChain& chain,
                        const std::vector<ModeChannel>& channels,
                        std::pair<double, double> band_hz,
                        AttenuatorScenario scenario,
                        const FluxOptions& options) {
    chain.validate();
    if (channels.empty()) throw DomainError("chain_flux: empty mode list");
    const double f_lo = band_hz.first, f_hi = band_hz.second;
    if (!(f_lo > 0) || !(f_hi > f_lo))
        throw DomainError("chain_flux: band must satisfy 0 < f1 < f2");
    if (!(options.grid_spacing_hz > 0) || options.ode_steps_per_segment < 1)
        throw DomainError("chain_flux: invalid grid/step options");

    // Regular grid across the band plus a node just above each in-band
    // cutoff, so the trapezoid sees every mode turn on.
    std::vector<double> grid;
    for (double f = f_lo; f < f_hi; f += options.grid_spacing_hz)
        grid.push_back(f);
    grid.push_back(f_hi);
    for (const auto& ch : channels) {
        double fc_node = ch.f_c_hz * (1.0 + 1e-9);
        if (fc_node > f_lo && fc_node < f_hi) grid.push_back(fc_node);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t m = grid.size();

    const kernels::Backend& backend = kernels::active_backend();
    const double t_room = chain.stages.front().t_hot_k;

    std::vector<ChannelState> states(channels.size());
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const auto& ch = channels[c];
        std::size_t off = static_cast<std::size_t>(
            std::upper_bound(grid.begin(), grid.end(), ch.f_c_hz) -
            grid.begin());
        states[c].offset = off;
        const std::size_t len = m - off;
        states[c].occupation.resize(len);
        states[c].rate.resize(len);
        backend.bose_einstein_batch(grid.data() + off, len, t_room,
                                    states[c].occupation.data());
        for (std::size_t i = 0; i < len; ++i) {
            double alpha = ch.alpha_db_per_m(grid[off + i]);
            if (!(alpha >= 0) || !std::isfinite(alpha))
                throw NumericError("chain_flux: invalid attenuation " +
                                   std::to_string(alpha) + " dB/m for mode " +
                                   ch.mode.label());
            states[c].rate[i] = alpha * ln10_over_10;
        }
    }

    std::vector<double> g0(m), gh(m), g1(m), nbe_cold(m);
    for (const StageSegment& seg : chain.stages) {
        march_segment(seg, options.ode_steps_per_segment, grid, states, backend,
                      g0, gh, g1);
        if (scenario == AttenuatorScenario::Active && seg.attenuator_db > 0) {
            backend.bose_einstein_batch(grid.data(), m, seg.t_cold_k,
                                        nbe_cold.data());
            const double inv_a = std::pow(10.0, -seg.attenuator_db / 10.0);
            for (auto& st : states)
                if (!st.occupation.empty())
                    backend.attenuator_jump_batch(st.occupation.data(),
                                                  nbe_cold.data() + st.offset,
                                                  inv_a, st.occupation.size());
        }
    }

    FluxSpectrum out;
    out.f_hz = grid;
    out.band_lo_hz = f_lo;
    out.band_hi_hz = f_hi;
    out.per_mode.assign(channels.size(), std::vector<double>(m, 0.0));
    out.summed.assign(m, 0.0);
    for (std::size_t c = 0; c < channels.size(); ++c) {
        out.mode_labels.push_back(channels[c].mode.label());
        const auto& st = states[c];
        for (std::size_t i = 0; i < st.occupation.size(); ++i) {
            double v = st.occupation[i];
            if (!std::isfinite(v))
                throw NumericError("chain_flux: non-finite occupation for " +
                                   channels[c].mode.label());
            out.per_mode[c][st.offset + i] = v;
            out.summed[st.offset + i] += v;
        }
    }
    out.band_flux_per_s = backend.trapezoid(grid.data(), out.summed.data(), m);
    return out;
}

} // namespace coaxflux
