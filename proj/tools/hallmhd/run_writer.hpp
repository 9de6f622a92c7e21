#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hallmhd/io/snapshot.hpp"

namespace hallmhd::cli {

/// Collects the files of one run directory and writes the manifest last.
class RunWriter {
 public:
  RunWriter(std::filesystem::path dir, std::string command);

  const std::filesystem::path& dir() const { return dir_; }
  void text(const std::string& name, std::string_view contents);
  void snapshot(const std::string& name, const spectral::MhdState& state, double alpha, double s,
                io::SnapshotPrecision precision);
  void finish(const std::string& config_text, int exit_code);

 private:
  std::filesystem::path dir_;
  std::string command_;
  std::vector<std::string> files_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace hallmhd::cli
