#include "coaxflux/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coaxflux/csv.hpp"
#include "coaxflux/error.hpp"

namespace coaxflux {

MaterialSpectrum MaterialSpectrum::conductor(std::string name,
                                             double sigma_s_per_m,
                                             double mu_p) {
    if (!(sigma_s_per_m > 0))
        throw DomainError("conductor '" + name + "': sigma must be positive");
    MaterialSpectrum m;
    m.name_ = std::move(name);
    m.kind_ = MaterialKind::Conductor;
    m.sigma_s_per_m_ = sigma_s_per_m;
    m.rows_ = {{0.0, 1.0, 0.0, mu_p, 0.0}};
    return m;
}

MaterialSpectrum MaterialSpectrum::constant_dielectric(std::string name,
                                                       double eps_p,
                                                       double tan_delta,
                                                       double mu_p,
                                                       double tan_delta_m) {
    MaterialSpectrum m;
    m.name_ = std::move(name);
    m.kind_ = MaterialKind::Dielectric;
    m.rows_ = {{0.0, eps_p, eps_p * tan_delta, mu_p, mu_p * tan_delta_m}};
    m.validate();
    return m;
}

MaterialSpectrum MaterialSpectrum::tabulated(std::string name,
                                             MaterialKind kind,
                                             std::vector<MaterialRow> rows) {
    MaterialSpectrum m;
    m.name_ = std::move(name);
    m.kind_ = kind;
    m.rows_ = std::move(rows);
    m.validate();
    return m;
}

MaterialSpectrum MaterialSpectrum::from_csv(const std::string& path,
                                            std::string name,
                                            MaterialKind kind) {
    CsvTable t = read_csv(path);
    const char* needed[] = {"f_hz", "eps_p", "eps_pp", "mu_p", "mu_pp"};
    int idx[5];
    for (int i = 0; i < 5; ++i) {
        idx[i] = t.column_index(needed[i]);
        if (idx[i] < 0)
            throw ParseError(path + ": missing column '" + needed[i] + "'");
    }
    std::vector<MaterialRow> rows;
    rows.reserve(t.rows.size());
    for (const auto& r : t.rows)
        rows.push_back({r[static_cast<size_t>(idx[0])], r[static_cast<size_t>(idx[1])],
                        r[static_cast<size_t>(idx[2])], r[static_cast<size_t>(idx[3])],
                        r[static_cast<size_t>(idx[4])]});
    if (name.empty()) name = path;
    return tabulated(std::move(name), kind, std::move(rows));
}

MaterialSpectrum MaterialSpectrum::conductor_from_config(const std::string& path,
                                                         std::string name) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open conductor config: " + path);
    double sigma = -1.0;
    double mu_p = 1.0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            auto last = s.find_last_not_of(" \t\r");
            s.erase(last == std::string::npos ? 0 : last + 1);
        };
        trim(key);
        trim(value);
        try {
            if (key == "sigma_s_per_m") sigma = std::stod(value);
            else if (key == "mu_p") mu_p = std::stod(value);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": bad numeric value for '" + key + "'");
        }
    }
    if (sigma <= 0)
        throw ParseError(path + ": missing or non-positive sigma_s_per_m");
    return conductor(std::move(name), sigma, mu_p);
}

void MaterialSpectrum::validate() const {
    if (rows_.empty())
        throw DomainError("material '" + name_ + "': empty table");
    for (size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        if (i > 0 && !(r.f_hz > rows_[i - 1].f_hz))
            throw DomainError("material '" + name_ +
                              "': frequencies must be strictly increasing");
        if (r.eps_pp < 0 || r.mu_pp < 0)
            throw DomainError("material '" + name_ +
                              "': negative loss part violates passivity");
        if (kind_ != MaterialKind::Conductor && r.eps_p < 1.0)
            throw DomainError("material '" + name_ + "': eps' < 1");
        if (!(r.mu_p > 0))
            throw DomainError("material '" + name_ + "': mu' must be positive");
    }
}

double MaterialSpectrum::min_f() const { return rows_.front().f_hz; }
double MaterialSpectrum::max_f() const { return rows_.back().f_hz; }

MaterialRow MaterialSpectrum::row_at(double f_hz, bool extrapolate) const {
    if (rows_.size() == 1) return rows_.front();
    if (f_hz < min_f() || f_hz > max_f()) {
        if (!extrapolate)
            throw DomainError("material '" + name_ + "': frequency " +
                              std::to_string(f_hz) + " Hz outside [" +
                              std::to_string(min_f()) + ", " +
                              std::to_string(max_f()) + "]");
        // clamp to the nearest node
        return f_hz < min_f() ? rows_.front() : rows_.back();
    }
    auto hi = std::lower_bound(rows_.begin(), rows_.end(), f_hz,
                               [](const MaterialRow& r, double f) { return r.f_hz < f; });
    if (hi == rows_.begin()) return rows_.front();
    auto lo = hi - 1;
    if (hi == rows_.end()) return rows_.back();
    double t = (f_hz - lo->f_hz) / (hi->f_hz - lo->f_hz);
    MaterialRow out;
    out.f_hz = f_hz;
    out.eps_p = lo->eps_p + t * (hi->eps_p - lo->eps_p);
    out.eps_pp = lo->eps_pp + t * (hi->eps_pp - lo->eps_pp);
    out.mu_p = lo->mu_p + t * (hi->mu_p - lo->mu_p);
    out.mu_pp = lo->mu_pp + t * (hi->mu_pp - lo->mu_pp);
    return out;
}

MaterialSpectrum::Properties MaterialSpectrum::interpolate(double f_hz,
                                                           bool extrapolate) const {
    MaterialRow r = row_at(f_hz, extrapolate);
    return {{r.eps_p, -r.eps_pp}, {r.mu_p, -r.mu_pp}};
}

double MaterialSpectrum::eps_p(double f_hz, bool extrapolate) const {
    return row_at(f_hz, extrapolate).eps_p;
}

double MaterialSpectrum::mu_p(double f_hz, bool extrapolate) const {
    return row_at(f_hz, extrapolate).mu_p;
}

double MaterialSpectrum::tan_delta(double f_hz, bool extrapolate) const {
    MaterialRow r = row_at(f_hz, extrapolate);
    return r.eps_pp / r.eps_p;
}

double MaterialSpectrum::tan_delta_m(double f_hz, bool extrapolate) const {
    MaterialRow r = row_at(f_hz, extrapolate);
    return r.mu_pp / r.mu_p;
}

MaterialSpectrum vacuum_fill() {
    return MaterialSpectrum::constant_dielectric("vacuum", 1.0, 0.0, 1.0, 0.0);
}

} // namespace coaxflux
