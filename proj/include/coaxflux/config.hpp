#pragma once

#include <map>
#include <string>
#include <vector>

namespace coaxflux {

/// Minimal sectioned key/value configuration:
///
///   # comment
///   [chain]
///   cable = ut086
///   temps_k = 300 35 2.85 0.882 0.082 0.006
///
/// Values are whitespace- or comma-separated tokens; typed getters convert
/// on access and throw ConfigError naming the section and key.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text, const std::string& label);

    bool has(const std::string& section, const std::string& key) const;
    std::vector<std::string> sections() const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key) const;

private:
    // section -> key -> raw tokens
    std::map<std::string, std::map<std::string, std::vector<std::string>>> data_;
    std::string label_;

    const std::vector<std::string>& tokens(const std::string& section,
                                           const std::string& key) const;
};

} // namespace coaxflux
