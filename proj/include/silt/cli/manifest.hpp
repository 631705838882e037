#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace silt::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct OutputRecord {
  std::string file;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<OutputRecord> outputs;
};

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::string utc_timestamp();

void write_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace silt::cli
