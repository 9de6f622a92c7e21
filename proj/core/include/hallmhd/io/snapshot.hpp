#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hallmhd/spectral/field.hpp"

namespace hallmhd::io {

/// Coefficient precision of a snapshot data block.
enum class SnapshotPrecision : std::uint8_t { complex64 = 4, complex128 = 8 };

/// "HMHD1" snapshot, little-endian throughout.
///
///   offset  size  field
///   0       5     magic "HMHD1"
///   5       1     dim (2 or 3)
///   6       1     bytes per real scalar (4 = complex64, 8 = complex128)
///   7       1     components per field (3)
///   8       4     n (u32)
///   12      4     reserved, zero
///   16      8     alpha (f64)
///   24      8     s (f64)
///   32      8     t (f64)
///   40      8     coefficients per component (u64)
///   48            u components 0..2 then b components 0..2, each a run of
///                 (re, im) pairs in half-spectrum storage order
struct Snapshot {
  spectral::MhdState state;
  double alpha = 1.0;
  double s = 2.5;
  SnapshotPrecision precision = SnapshotPrecision::complex64;
};

inline constexpr std::size_t kSnapshotHeaderBytes = 48;

std::vector<std::uint8_t> encode_snapshot(const spectral::MhdState& state, double alpha, double s,
                                          SnapshotPrecision precision = SnapshotPrecision::complex64);
/// Throws std::runtime_error: "unexpected end of snapshot" for short input,
/// a message naming the expected "HMHD1" for a wrong magic, and header
/// consistency errors otherwise.
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

/// Atomic write (temporary file, then rename).
void write_snapshot(const std::filesystem::path& path, const spectral::MhdState& state, double alpha, double s,
                    SnapshotPrecision precision = SnapshotPrecision::complex64);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace hallmhd::io
