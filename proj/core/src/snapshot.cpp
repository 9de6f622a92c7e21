#include "hallmhd/io/snapshot.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "hallmhd/errors.hpp"
#include "hallmhd/io/files.hpp"

namespace hallmhd::io {

namespace {

constexpr char kMagic[5] = {'H', 'M', 'H', 'D', '1'};
constexpr int kComponents = 3;

template <class T>
void put(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  template <class T>
  T get() {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
    need(sizeof(T));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return std::bit_cast<T>(bits);
  }

  void need(std::size_t count) const {
    if (bytes_.size() - pos_ < count) throw ConfigError("unexpected end of snapshot");
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const spectral::MhdState& state, double alpha, double s,
                                          SnapshotPrecision precision) {
  if (state.u.components() != kComponents || state.b.components() != kComponents || !state.u.same_shape(state.b)) {
    throw std::invalid_argument("encode_snapshot: u and b must be vector fields on one grid");
  }
  const auto& g = state.u.grid();
  const std::size_t m = g.spectral_size();
  const std::size_t scalar = static_cast<std::size_t>(precision);

  std::vector<std::uint8_t> out;
  out.reserve(kSnapshotHeaderBytes + 2 * kComponents * m * 2 * scalar);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put(out, static_cast<std::uint8_t>(g.dim()));
  put(out, static_cast<std::uint8_t>(scalar));
  put(out, static_cast<std::uint8_t>(kComponents));
  put(out, static_cast<std::uint32_t>(g.n()));
  put(out, std::uint32_t{0});
  put(out, alpha);
  put(out, s);
  put(out, state.t);
  put(out, static_cast<std::uint64_t>(m));
  for (const spectral::Field* f : {&state.u, &state.b}) {
    for (const auto& c : f->data()) {
      if (precision == SnapshotPrecision::complex64) {
        put(out, static_cast<float>(c.real()));
        put(out, static_cast<float>(c.imag()));
      } else {
        put(out, c.real());
        put(out, c.imag());
      }
    }
  }
  return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
  Reader in(bytes);
  in.need(sizeof(kMagic));
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    const std::string found(bytes.begin(), bytes.begin() + sizeof(kMagic));
    if (found.starts_with("HMHD")) {
      throw ConfigError("unsupported snapshot version '" + found + "' (expected \"HMHD1\")");
    }
    throw ConfigError("not a snapshot: bad magic (expected \"HMHD1\")");
  }
  for (std::size_t i = 0; i < sizeof(kMagic); ++i) in.get<std::uint8_t>();

  const int dim = in.get<std::uint8_t>();
  const int scalar = in.get<std::uint8_t>();
  const int comps = in.get<std::uint8_t>();
  const auto n = in.get<std::uint32_t>();
  in.get<std::uint32_t>();
  Snapshot snap;
  snap.alpha = in.get<double>();
  snap.s = in.get<double>();
  const double t = in.get<double>();
  const auto m = in.get<std::uint64_t>();

  if (scalar != 4 && scalar != 8) throw ConfigError("snapshot: bytes per scalar must be 4 or 8, got " + std::to_string(scalar));
  if (comps != kComponents) throw ConfigError("snapshot: expected 3 components, got " + std::to_string(comps));
  spectral::GridPtr grid;
  try {
    grid = spectral::Grid::make(dim, static_cast<int>(n));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
  if (m != grid->spectral_size()) throw ConfigError("snapshot: coefficient count does not match n and dim");
  snap.precision = static_cast<SnapshotPrecision>(scalar);

  snap.state.t = t;
  snap.state.u = spectral::Field::vector(grid);
  snap.state.b = spectral::Field::vector(grid);
  in.need(2 * kComponents * m * 2 * static_cast<std::size_t>(scalar));
  for (spectral::Field* f : {&snap.state.u, &snap.state.b}) {
    for (auto& c : f->data()) {
      if (scalar == 4) {
        const float re = in.get<float>();
        const float im = in.get<float>();
        c = {re, im};
      } else {
        const double re = in.get<double>();
        const double im = in.get<double>();
        c = {re, im};
      }
    }
  }
  if (in.remaining() != 0) throw ConfigError("snapshot: trailing bytes after coefficient data");
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const spectral::MhdState& state, double alpha, double s,
                    SnapshotPrecision precision) {
  write_file_atomic(path, encode_snapshot(state, alpha, s, precision));
}

Snapshot read_snapshot(const std::filesystem::path& path) { return decode_snapshot(read_binary_file(path)); }

}  // namespace hallmhd::io
