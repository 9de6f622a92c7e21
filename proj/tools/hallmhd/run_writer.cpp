#include "run_writer.hpp"

#include "hallmhd/io/files.hpp"
#include "hallmhd/io/manifest.hpp"

namespace hallmhd::cli {

RunWriter::RunWriter(std::filesystem::path dir, std::string command)
    : dir_(std::move(dir)), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(dir_);
  // a stale manifest would vouch for files this run is about to replace
  std::filesystem::remove(dir_ / io::kManifestName);
}

void RunWriter::text(const std::string& name, std::string_view contents) {
  io::write_file_atomic(dir_ / name, contents);
  files_.push_back(name);
}

void RunWriter::snapshot(const std::string& name, const spectral::MhdState& state, double alpha, double s,
                         io::SnapshotPrecision precision) {
  io::write_snapshot(dir_ / name, state, alpha, s, precision);
  files_.push_back(name);
}

void RunWriter::finish(const std::string& config_text, int exit_code) {
  io::RunManifest m;
  m.command = command_;
  m.config = config_text;
  m.platform = io::platform_fingerprint();
  m.files = io::hash_files(dir_, files_);
  m.timings["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  m.exit_code = exit_code;
  io::write_manifest(dir_, m);
}

}  // namespace hallmhd::cli
