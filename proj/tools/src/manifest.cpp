#include "manifest.hpp"

#include <zlib.h>

#include <cstdio>
#include <stdexcept>

#include "subplanck/gridio.hpp"

namespace subplanck::cli {

namespace {

std::string basename_of(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string dirname_of(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  return slash == std::string::npos ? std::string(".")
                                    : path.substr(0, slash);
}

}  // namespace

std::string crc32_hex_of(const std::string& bytes) {
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", crc);
  return buf;
}

OutputRecord record_output(const std::string& path,
                           const std::string& contents) {
  return OutputRecord{basename_of(path), contents.size(),
                      crc32_hex_of(contents)};
}

nlohmann::ordered_json make_manifest(
    const std::string& command, const nlohmann::ordered_json& parameters,
    const std::vector<OutputRecord>& outputs,
    const nlohmann::ordered_json& render) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["parameters"] = parameters;
  auto& list = doc["outputs"] = nlohmann::ordered_json::array();
  for (const auto& rec : outputs) {
    nlohmann::ordered_json entry;
    entry["path"] = rec.path;
    entry["bytes"] = rec.bytes;
    entry["crc32"] = rec.crc32_hex;
    list.push_back(std::move(entry));
  }
  if (!render.empty()) doc["render"] = render;
  return doc;
}

int verify_manifest(const std::string& manifest_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(gridio::read_file(manifest_path));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "verify: cannot read manifest: %s\n", e.what());
    return 2;
  }
  if (!doc.is_object() || !doc.contains("outputs") ||
      !doc["outputs"].is_array()) {
    std::fprintf(stderr, "verify: manifest has no outputs array\n");
    return 2;
  }

  const std::string dir = dirname_of(manifest_path);
  bool all_ok = true;
  for (const auto& entry : doc["outputs"]) {
    if (!entry.is_object() || !entry.contains("path") ||
        !entry.contains("bytes") || !entry.contains("crc32") ||
        !entry["path"].is_string() ||
        !entry["bytes"].is_number_unsigned() ||
        !entry["crc32"].is_string()) {
      std::fprintf(stderr, "verify: malformed output entry\n");
      return 2;
    }
    const std::string name = entry["path"].get<std::string>();
    if (name.empty() || name.find_first_of("/\\") != std::string::npos ||
        name == "..") {
      std::fprintf(stderr, "verify: suspicious output path '%s'\n",
                   name.c_str());
      return 2;
    }
    const std::string full = dir + "/" + name;
    std::string contents;
    try {
      contents = gridio::read_file(full);
    } catch (const std::exception&) {
      std::printf("MISSING  %s\n", name.c_str());
      all_ok = false;
      continue;
    }
    const bool size_ok =
        contents.size() == entry["bytes"].get<std::uint64_t>();
    const bool crc_ok =
        crc32_hex_of(contents) == entry["crc32"].get<std::string>();
    if (size_ok && crc_ok) {
      std::printf("OK       %s\n", name.c_str());
    } else {
      std::printf("CHANGED  %s\n", name.c_str());
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace subplanck::cli
