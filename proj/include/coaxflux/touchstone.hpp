#pragma once

#include <complex>
#include <string>
#include <vector>

namespace coaxflux {

struct SParamRecord {
    double f_hz = 0;
    std::complex<double> s11, s21, s12, s22;
};

enum class TouchstoneFormat { RI, MA, DB };

/// Parses a two-port Touchstone (.s2p) file. Supports RI/MA/DB value
/// encodings and HZ/KHZ/MHZ/GHZ frequency units from the option line
/// ("# GHZ S RI R 50"); '!' comments are skipped. Malformed content throws
/// ParseError with the offending line number.
std::vector<SParamRecord> parse_touchstone(const std::string& path);

/// Same, from an in-memory string (the path only labels error messages).
std::vector<SParamRecord> parse_touchstone_text(const std::string& text,
                                                const std::string& label);

/// Serializes records as .s2p text in the requested format (GHz unit,
/// reference resistance 50).
std::string format_touchstone(const std::vector<SParamRecord>& records,
                              TouchstoneFormat format,
                              const std::string& comment = "");

void write_touchstone(const std::string& path,
                      const std::vector<SParamRecord>& records,
                      TouchstoneFormat format,
                      const std::string& comment = "");

} // namespace coaxflux
