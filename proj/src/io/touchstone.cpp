#include "coaxflux/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coaxflux/constants.hpp"
#include "coaxflux/csv.hpp"
#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::complex<double> decode(TouchstoneFormat fmt, double v1, double v2) {
    switch (fmt) {
        case TouchstoneFormat::RI: return {v1, v2};
        case TouchstoneFormat::MA: {
            double ph = v2 * constants::pi / 180.0;
            return {v1 * std::cos(ph), v1 * std::sin(ph)};
        }
        case TouchstoneFormat::DB: {
            double mag = std::pow(10.0, v1 / 20.0);
            double ph = v2 * constants::pi / 180.0;
            return {mag * std::cos(ph), mag * std::sin(ph)};
        }
    }
    throw ParseError("unknown touchstone format");
}

void encode(TouchstoneFormat fmt, std::complex<double> s, double& v1,
            double& v2) {
    switch (fmt) {
        case TouchstoneFormat::RI:
            v1 = s.real();
            v2 = s.imag();
            return;
        case TouchstoneFormat::MA:
            v1 = std::abs(s);
            v2 = std::arg(s) * 180.0 / constants::pi;
            return;
        case TouchstoneFormat::DB:
            v1 = 20.0 * std::log10(std::abs(s));
            v2 = std::arg(s) * 180.0 / constants::pi;
            return;
    }
    throw ParseError("unknown touchstone format");
}

} // namespace

std::vector<SParamRecord> parse_touchstone_text(const std::string& text,
                                                const std::string& label) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    double unit_scale = 1e9; // GHZ default
    TouchstoneFormat fmt = TouchstoneFormat::MA;
    bool option_seen = false;
    std::vector<SParamRecord> records;

    while (std::getline(in, line)) {
        ++line_no;
        auto bang = line.find('!');
        if (bang != std::string::npos) line.erase(bang);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;

        if (line[first] == '#') {
            if (option_seen)
                throw ParseError(label + ":" + std::to_string(line_no) +
                                 ": duplicate option line");
            option_seen = true;
            std::istringstream os(line.substr(first + 1));
            std::string tok;
            bool expect_r = false;
            while (os >> tok) {
                std::string t = upper(tok);
                if (expect_r) {
                    try {
                        (void)std::stod(t);
                    } catch (const std::exception&) {
                        throw ParseError(label + ":" + std::to_string(line_no) +
                                         ": bad reference resistance '" + tok +
                                         "'");
                    }
                    expect_r = false;
                } else if (t == "HZ") unit_scale = 1.0;
                else if (t == "KHZ") unit_scale = 1e3;
                else if (t == "MHZ") unit_scale = 1e6;
                else if (t == "GHZ") unit_scale = 1e9;
                else if (t == "S") { /* scattering parameters */ }
                else if (t == "RI") fmt = TouchstoneFormat::RI;
                else if (t == "MA") fmt = TouchstoneFormat::MA;
                else if (t == "DB") fmt = TouchstoneFormat::DB;
                else if (t == "R") expect_r = true;
                else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                    throw ParseError(label + ":" + std::to_string(line_no) +
                                     ": unsupported parameter type '" + tok +
                                     "' (only S)");
                else
                    throw ParseError(label + ":" + std::to_string(line_no) +
                                     ": malformed option token '" + tok + "'");
            }
            if (expect_r)
                throw ParseError(label + ":" + std::to_string(line_no) +
                                 ": option 'R' missing its value");
            continue;
        }

        std::istringstream ds(line);
        std::vector<double> vals;
        std::string tok;
        while (ds >> tok) {
            try {
                std::size_t pos = 0;
                vals.push_back(std::stod(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(label + ":" + std::to_string(line_no) +
                                 ": non-numeric value '" + tok + "'");
            }
        }
        if (vals.size() != 9)
            throw ParseError(label + ":" + std::to_string(line_no) + ": got " +
                             std::to_string(vals.size()) +
                             " values, expected 9 (two-port record)");

        SParamRecord rec;
        rec.f_hz = vals[0] * unit_scale;
        // Touchstone two-port column order: S11 S21 S12 S22.
        rec.s11 = decode(fmt, vals[1], vals[2]);
        rec.s21 = decode(fmt, vals[3], vals[4]);
        rec.s12 = decode(fmt, vals[5], vals[6]);
        rec.s22 = decode(fmt, vals[7], vals[8]);
        if (!records.empty() && !(rec.f_hz > records.back().f_hz))
            throw ParseError(label + ":" + std::to_string(line_no) +
                             ": frequencies must be strictly increasing");
        records.push_back(rec);
    }
    if (records.empty())
        throw ParseError(label + ": no data records");
    return records;
}

std::vector<SParamRecord> parse_touchstone(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open touchstone file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_touchstone_text(ss.str(), path);
}

std::string format_touchstone(const std::vector<SParamRecord>& records,
                              TouchstoneFormat format,
                              const std::string& comment) {
    // Full precision: MA/DB pass through degree/log conversions, and the
    // encodings must stay interchangeable to 1e-12.
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    if (!comment.empty()) out << "! " << comment << "\n";
    const char* fmt_name = format == TouchstoneFormat::RI   ? "RI"
                           : format == TouchstoneFormat::MA ? "MA"
                                                            : "DB";
    out << "# GHZ S " << fmt_name << " R 50\n";
    for (const auto& r : records) {
        out << num(r.f_hz / 1e9);
        for (std::complex<double> s : {r.s11, r.s21, r.s12, r.s22}) {
            double v1, v2;
            encode(format, s, v1, v2);
            out << " " << num(v1) << " " << num(v2);
        }
        out << "\n";
    }
    return out.str();
}

void write_touchstone(const std::string& path,
                      const std::vector<SParamRecord>& records,
                      TouchstoneFormat format, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write touchstone file: " + path);
    out << format_touchstone(records, format, comment);
}

} // namespace coaxflux
