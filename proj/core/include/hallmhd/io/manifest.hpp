#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hallmhd::io {

inline constexpr const char* kManifestSchema = "hallmhd.manifest/1";
inline constexpr const char* kManifestName = "manifest.json";

struct ManifestFile {
  /// Relative to the run directory, '/'-separated.
  std::string path;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string command;
  /// Canonical config text; load_config accepts the manifest itself.
  std::string config;
  std::string version;
  std::map<std::string, std::string> platform;
  std::vector<ManifestFile> files;
  std::map<std::string, double> timings;
  int exit_code = 0;
};

/// Compiler, library and OS identification of this build.
std::map<std::string, std::string> platform_fingerprint();

/// Hashes every listed file under dir.
std::vector<ManifestFile> hash_files(const std::filesystem::path& dir, const std::vector<std::string>& relative);

/// Written atomically as dir/manifest.json; call after every other output.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Names of files whose current hash or size differs from the manifest
/// (empty when consistent). Missing files are reported too.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace hallmhd::io
