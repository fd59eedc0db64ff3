#include "coaxflux/manifest.hpp"

#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "coaxflux/error.hpp"

namespace coaxflux {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input for digest: " + path);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a offset basis
    char buf[8192];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(h));
    return hex;
}

void ResultManifest::add_input(const std::string& path) {
    inputs.emplace_back(path, file_digest(path));
}

std::string ResultManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "coaxflux";
    j["version"] = tool_version;
    j["pipeline"] = pipeline;
    j["inputs"] = nlohmann::json::array();
    for (const auto& [path, digest] : inputs)
        j["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    j["parameters"] = parameters;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void ResultManifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path);
    out << to_json();
}

} // namespace coaxflux
