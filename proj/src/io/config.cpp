#include "coaxflux/config.hpp"

#include <fstream>
#include <sstream>

#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    auto last = s.find_last_not_of(" \t\r");
    s.erase(last == std::string::npos ? 0 : last + 1);
    return s;
}

std::vector<std::string> tokenize(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : value) {
        if (ch == ' ' || ch == '\t' || ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& label) {
    Config cfg;
    cfg.label_ = label;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(label + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(label + ":" + std::to_string(line_no) +
                                  ": empty section name");
            cfg.data_[section]; // section may stay empty
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(label + ":" + std::to_string(line_no) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(label + ":" + std::to_string(line_no) +
                              ": empty key");
        cfg.data_[section][key] = tokenize(value);
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) > 0;
}

std::vector<std::string> Config::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : data_) out.push_back(name);
    return out;
}

const std::vector<std::string>& Config::tokens(const std::string& section,
                                               const std::string& key) const {
    auto s = data_.find(section);
    if (s == data_.end())
        throw ConfigError(label_ + ": missing section [" + section + "]");
    auto k = s->second.find(key);
    if (k == s->second.end())
        throw ConfigError(label_ + ": missing key '" + key + "' in [" +
                          section + "]");
    return k->second;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
    const auto& t = tokens(section, key);
    if (t.size() != 1)
        throw ConfigError(label_ + ": key '" + key + "' in [" + section +
                          "] expects a single value");
    return t[0];
}

std::string Config::get_string_or(const std::string& section,
                                  const std::string& key,
                                  const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
    std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(label_ + ": key '" + key + "' in [" + section +
                          "]: not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    const auto& t = tokens(section, key);
    std::vector<double> out;
    out.reserve(t.size());
    for (const auto& v : t) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(v, &pos));
            if (pos != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
            throw ConfigError(label_ + ": key '" + key + "' in [" + section +
                              "]: not a number: '" + v + "'");
        }
    }
    return out;
}

} // namespace coaxflux
