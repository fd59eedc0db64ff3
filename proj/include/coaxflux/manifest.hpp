#pragma once

#include <map>
#include <string>
#include <vector>

namespace coaxflux {

inline constexpr const char* tool_version = "0.1.0";

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

/// Run record emitted once per CLI invocation: pipeline id, input digests,
/// parameter echo and produced files.
struct ResultManifest {
    std::string pipeline;
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;

    void add_input(const std::string& path);
    std::string to_json() const;
    void write(const std::string& path) const;
};

} // namespace coaxflux
