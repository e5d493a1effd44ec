#pragma once

// Run manifests: a small JSON sidecar describing what a CLI invocation
// produced, so a result directory can be checked for bit-rot or tampering
// later.  Paths are stored relative to the manifest itself and no
// timestamps are recorded, keeping reruns byte-identical.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace subplanck::cli {

inline constexpr const char* kToolName = "subplanck";
inline constexpr const char* kToolVersion = "1.0.0";

struct OutputRecord {
  std::string path;   // basename, relative to the manifest directory
  std::uint64_t bytes = 0;
  std::string crc32_hex;  // lowercase, zero-padded to 8 digits
};

// CRC32 (zlib polynomial) of a whole buffer, formatted as 8 hex digits.
std::string crc32_hex_of(const std::string& bytes);

// Record one freshly written file.  `path` may carry directories; only the
// basename is stored.
OutputRecord record_output(const std::string& path,
                           const std::string& contents);

// Assemble the manifest document.  `render` may be empty (discarded) or an
// object with palette/colorbar limits for image outputs.
nlohmann::ordered_json make_manifest(const std::string& command,
                                     const nlohmann::ordered_json& parameters,
                                     const std::vector<OutputRecord>& outputs,
                                     const nlohmann::ordered_json& render);

// Re-check every output listed in the manifest at `manifest_path` against
// the files sitting next to it.  Prints one status line per entry to
// stdout.  Returns 0 when everything matches, 1 on any missing/changed
// file, 2 when the manifest itself is unreadable or malformed.
int verify_manifest(const std::string& manifest_path);

}  // namespace subplanck::cli
