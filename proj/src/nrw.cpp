#include "coaxflux/nrw.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coaxflux/constants.hpp"
#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

using constants::light_speed;
using constants::mu0;
using constants::pi;

using cplx = std::complex<double>;

// Axial wavevector of the dominant TE10 mode in a filled guide, on the
// branch with decaying forward propagation (Im <= 0, Re >= 0 for lossless).
cplx axial_wavevector(double omega, double broad_wall, cplx eps_r, cplx mu_r) {
    cplx arg = (omega / light_speed) * (omega / light_speed) * eps_r * mu_r -
               cplx(pi / broad_wall, 0.0) * (pi / broad_wall);
    cplx k = std::sqrt(arg);
    if (k.imag() > 0) k = -k;
    if (k.imag() == 0 && k.real() < 0) k = -k;
    return k;
}

} // namespace

void WaveguideSection::validate() const {
    if (!(broad_wall_m > narrow_wall_m) || !(narrow_wall_m > 0))
        throw DomainError("waveguide section requires a > b > 0");
    if (!(thickness_m > 0))
        throw DomainError("waveguide section requires d > 0");
}

double WaveguideSection::cutoff_hz() const {
    return light_speed / (2.0 * broad_wall_m);
}

SParamRecord forward_slab(cplx eps_r, cplx mu_r, const WaveguideSection& section,
                          double f_hz) {
    section.validate();
    if (!(f_hz > section.cutoff_hz()))
        throw DomainError("forward_slab: frequency below the empty-guide "
                          "cutoff");
    const double omega = 2.0 * pi * f_hz;
    const double a = section.broad_wall_m;
    const double kz0 = std::sqrt((omega / light_speed) * (omega / light_speed) -
                                 (pi / a) * (pi / a));
    const cplx kz = axial_wavevector(omega, a, eps_r, mu_r);

    const cplx z_empty = omega * mu0 / kz0;
    const cplx z_fill = omega * mu0 * mu_r / kz;
    const cplx gamma = (z_fill - z_empty) / (z_fill + z_empty);
    const cplx p = std::exp(cplx(0.0, -1.0) * kz * section.thickness_m);

    const cplx g2p2 = gamma * gamma * p * p;
    SParamRecord rec;
    rec.f_hz = f_hz;
    rec.s11 = gamma * (1.0 - p * p) / (1.0 - g2p2);
    rec.s21 = p * (1.0 - gamma * gamma) / (1.0 - g2p2);
    rec.s12 = rec.s21;
    rec.s22 = rec.s11;
    return rec;
}

std::vector<NrwSolution> nrw_invert(const std::vector<SParamRecord>& records,
                                    const WaveguideSection& section,
                                    int branch, const NrwOptions& options) {
    section.validate();
    if (branch < 0) throw DomainError("nrw_invert: branch must be >= 0");
    if (records.empty()) throw DomainError("nrw_invert: no records");

    const double f_cut = section.cutoff_hz();
    const double d = section.thickness_m;
    const double a = section.broad_wall_m;
    auto warn = [&](const std::string& msg) {
        if (options.warnings) options.warnings->push_back(msg);
    };

    std::vector<cplx> gammas(records.size()), ps(records.size());
    std::vector<double> phases(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (i > 0 && !(r.f_hz > records[i - 1].f_hz))
            throw DomainError("nrw_invert: records must be sorted by "
                              "increasing frequency");
        if (!(r.f_hz > f_cut))
            throw DomainError("nrw_invert: band reaches the empty-guide "
                              "cutoff at " + std::to_string(f_cut) + " Hz");

        // reciprocal, symmetric slab: fold the two ports together
        cplx s11 = 0.5 * (r.s11 + r.s22);
        cplx s21 = 0.5 * (r.s21 + r.s12);
        double scale = std::max({std::abs(s11), std::abs(s21), 1e-6});
        if (std::abs(r.s11 - r.s22) > options.asymmetry_warn_threshold * scale ||
            std::abs(r.s21 - r.s12) > options.asymmetry_warn_threshold * scale)
            warn("port asymmetry beyond threshold at f=" +
                 std::to_string(r.f_hz) + " Hz");
        if (std::abs(s11) > 1.0 + options.passivity_slack ||
            std::abs(s21) > 1.0 + options.passivity_slack)
            warn("|S| above unity (non-passive record?) at f=" +
                 std::to_string(r.f_hz) + " Hz");

        cplx gamma;
        if (std::abs(2.0 * s11) < 1e-280) {
            // Matched sample: the reflection quadratic degenerates; its
            // physical root is the Gamma -> 0 limit.
            gamma = 0.0;
        } else {
            cplx x = (1.0 - s21 * s21 + s11 * s11) / (2.0 * s11);
            cplx root = x + std::sqrt(x * x - 1.0);
            gamma = std::abs(root) > 1.0 ? 1.0 / root : root;
        }
        gammas[i] = gamma;

        cplx v = s21 - s11;
        cplx denom = 1.0 + gamma * v;
        if (std::abs(denom) < 1e-280)
            throw NumericError("nrw_invert: degenerate propagation factor at "
                               "f=" + std::to_string(r.f_hz));
        ps[i] = (v + gamma) / denom;
        phases[i] = std::arg(ps[i]);
    }

    // Continuous phase across the sweep; the branch integer then fixes the
    // whole number of turns at the first frequency.
    for (std::size_t i = 1; i < phases.size(); ++i) {
        double k = std::round((phases[i - 1] - phases[i]) / (2.0 * pi));
        phases[i] += 2.0 * pi * k;
    }

    std::vector<NrwSolution> out(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double f = records[i].f_hz;
        const double omega = 2.0 * pi * f;
        const double kz0 =
            std::sqrt((omega / light_speed) * (omega / light_speed) -
                      (pi / a) * (pi / a));

        NrwSolution s;
        s.f_hz = f;
        s.branch = branch;
        s.gamma = gammas[i];
        s.p = ps[i];
        double re_kz = (2.0 * pi * branch - phases[i]) / d;
        double im_kz = std::log(std::abs(ps[i])) / d;
        s.k_z = cplx(re_kz, im_kz);

        cplx f_ratio = (1.0 - s.gamma) / (1.0 + s.gamma);
        if (std::abs(1.0 + s.gamma) < 1e-280 || std::abs(f_ratio) < 1e-280)
            throw NumericError("nrw_invert: reflection coefficient at the "
                               "unit circle, cannot form F, f=" +
                               std::to_string(f));
        s.mu_r = s.k_z / (kz0 * f_ratio);
        s.eps_r = light_speed * light_speed *
                  (s.k_z * s.k_z + (pi / a) * (pi / a)) / (omega * omega * s.mu_r);
        out[i] = s;
    }
    return out;
}

ThicknessBranchSet invert_all_branches(const std::vector<SParamRecord>& records,
                                       const WaveguideSection& section,
                                       int n_max, const NrwOptions& options) {
    if (n_max < 0) throw DomainError("invert_all_branches: n_max must be >= 0");
    ThicknessBranchSet set;
    set.thickness_m = section.thickness_m;
    set.branches.reserve(static_cast<std::size_t>(n_max) + 1);
    NrwOptions opts = options;
    for (int n = 0; n <= n_max; ++n) {
        set.branches.push_back(nrw_invert(records, section, n, opts));
        opts.warnings = nullptr; // identical data, report once
    }
    return set;
}

DisambiguationResult disambiguate_branches(
    const std::vector<ThicknessBranchSet>& sets, double rel_threshold) {
    std::vector<const ThicknessBranchSet*> distinct;
    for (const auto& s : sets) {
        bool dup = false;
        for (const auto* d : distinct)
            if (std::fabs(d->thickness_m - s.thickness_m) <
                1e-12 * s.thickness_m)
                dup = true;
        if (!dup) distinct.push_back(&s);
    }
    if (distinct.size() < 2)
        throw DomainError("disambiguate_branches: at least two distinct "
                          "thicknesses are required");

    struct Candidate {
        const ThicknessBranchSet *sa, *sb;
        int na, nb;
        double disc, rel;
    };
    std::vector<Candidate> candidates;

    for (std::size_t i = 0; i < distinct.size(); ++i) {
        for (std::size_t j = i + 1; j < distinct.size(); ++j) {
            const auto& sa = *distinct[i];
            const auto& sb = *distinct[j];
            for (std::size_t na = 0; na < sa.branches.size(); ++na) {
                for (std::size_t nb = 0; nb < sb.branches.size(); ++nb) {
                    const auto& va = sa.branches[na];
                    const auto& vb = sb.branches[nb];
                    if (va.size() != vb.size())
                        throw DomainError("disambiguate_branches: frequency "
                                          "grids differ in length");
                    double disc = 0, rel = 0;
                    for (std::size_t k = 0; k < va.size(); ++k) {
                        if (std::fabs(va[k].f_hz - vb[k].f_hz) >
                            1e-9 * va[k].f_hz)
                            throw DomainError("disambiguate_branches: "
                                              "frequency grids differ");
                        double de = std::fabs(va[k].eps_p() - vb[k].eps_p());
                        double dm = std::fabs(va[k].mu_p() - vb[k].mu_p());
                        disc += de + dm;
                        double me = 0.5 * std::fabs(va[k].eps_p() + vb[k].eps_p());
                        double mm = 0.5 * std::fabs(va[k].mu_p() + vb[k].mu_p());
                        rel += 0.5 * (de / std::max(me, 1e-30) +
                                      dm / std::max(mm, 1e-30));
                    }
                    disc /= static_cast<double>(va.size());
                    rel /= static_cast<double>(va.size());
                    candidates.push_back({&sa, &sb, static_cast<int>(na),
                                          static_cast<int>(nb), disc, rel});
                }
            }
        }
    }
    if (candidates.empty())
        throw DomainError("disambiguate_branches: no branch candidates");

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) {
                  return x.disc < y.disc;
              });
    const Candidate& best = candidates.front();
    if (best.rel > rel_threshold) {
        std::ostringstream os;
        os << "disambiguate_branches: no branch pair agrees within "
           << rel_threshold * 100 << "% band-averaged discrepancy; best:";
        for (std::size_t k = 0; k < std::min<std::size_t>(3, candidates.size());
             ++k) {
            const auto& c = candidates[k];
            os << " (d=" << c.sa->thickness_m * 1e3 << "mm n=" << c.na
               << " | d=" << c.sb->thickness_m * 1e3 << "mm n=" << c.nb
               << " rel=" << c.rel * 100 << "%)";
        }
        throw DomainError(os.str());
    }

    DisambiguationResult res;
    res.thickness_a_m = best.sa->thickness_m;
    res.thickness_b_m = best.sb->thickness_m;
    res.branch_a = best.na;
    res.branch_b = best.nb;
    res.discrepancy = best.disc;
    res.rel_discrepancy = best.rel;
    const auto& va = best.sa->branches[static_cast<std::size_t>(best.na)];
    const auto& vb = best.sb->branches[static_cast<std::size_t>(best.nb)];
    res.merged.resize(va.size());
    for (std::size_t k = 0; k < va.size(); ++k) {
        NrwSolution m;
        m.f_hz = va[k].f_hz;
        m.branch = best.na;
        m.eps_r = 0.5 * (va[k].eps_r + vb[k].eps_r);
        m.mu_r = 0.5 * (va[k].mu_r + vb[k].mu_r);
        m.gamma = 0.5 * (va[k].gamma + vb[k].gamma);
        m.k_z = 0.5 * (va[k].k_z + vb[k].k_z);
        m.p = 0.0; // thickness-specific, no meaningful merged value
        res.merged[k] = m;
    }
    return res;
}

} // namespace coaxflux
