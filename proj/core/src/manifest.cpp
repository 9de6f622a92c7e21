#include "hallmhd/io/manifest.hpp"

#include <fftw3.h>
#include <fmt/format.h>
#include <openssl/opensslv.h>
#include <sys/utsname.h>

#include "hallmhd/errors.hpp"
#include "hallmhd/io/files.hpp"
#include "hallmhd/version.hpp"
#include "json.hpp"

namespace hallmhd::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::map<std::string, std::string> platform_fingerprint() {
  std::map<std::string, std::string> p;
  utsname u{};
  if (::uname(&u) == 0) {
    p["os"] = fmt::format("{} {}", u.sysname, u.release);
    p["arch"] = u.machine;
  }
#if defined(__clang__)
  p["compiler"] = fmt::format("clang {}.{}.{}", __clang_major__, __clang_minor__, __clang_patchlevel__);
#elif defined(__GNUC__)
  p["compiler"] = fmt::format("gcc {}.{}.{}", __GNUC__, __GNUC_MINOR__, __GNUC_PATCHLEVEL__);
#endif
  p["fftw"] = fftw_version;
  p["openssl"] = OPENSSL_VERSION_TEXT;
  p["cxx_standard"] = fmt::format("{}", __cplusplus);
  return p;
}

std::vector<ManifestFile> hash_files(const fs::path& dir, const std::vector<std::string>& relative) {
  std::vector<ManifestFile> out;
  for (const auto& rel : relative) {
    const fs::path p = dir / rel;
    out.push_back({fs::path(rel).generic_string(), sha256_file(p), fs::file_size(p)});
  }
  return out;
}

void write_manifest(const fs::path& dir, const RunManifest& m) {
  json j;
  j["schema"] = kManifestSchema;
  j["command"] = m.command;
  j["config"] = m.config;
  j["config_sha256"] = sha256_hex(m.config);
  j["version"] = m.version.empty() ? std::string(kVersion) : m.version;
  j["platform"] = m.platform;
  json files = json::array();
  for (const auto& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  j["files"] = files;
  j["timings"] = m.timings;
  j["exit_code"] = m.exit_code;
  write_file_atomic(dir / kManifestName, j.dump(2) + "\n");
}

RunManifest read_manifest(const fs::path& path) {
  try {
    const json j = json::parse(read_text_file(path));
    if (j.value("schema", "") != kManifestSchema) throw ConfigError(path.string() + ": not a run manifest");
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.platform = j.at("platform").get<std::map<std::string, std::string>>();
    for (const auto& f : j.at("files")) {
      m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                         f.at("bytes").get<std::uintmax_t>()});
    }
    m.timings = j.at("timings").get<std::map<std::string, double>>();
    m.exit_code = j.at("exit_code").get<int>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": malformed manifest: " + e.what());
  }
}

std::vector<std::string> verify_manifest(const fs::path& dir) {
  const RunManifest m = read_manifest(dir / kManifestName);
  std::vector<std::string> bad;
  for (const auto& f : m.files) {
    const fs::path p = dir / f.path;
    std::error_code ec;
    if (!fs::exists(p, ec) || fs::file_size(p, ec) != f.bytes || sha256_file(p) != f.sha256) bad.push_back(f.path);
  }
  return bad;
}

}  // namespace hallmhd::io
