#include "hallmhd/spectral/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hallmhd/spectral/operators.hpp"

namespace hallmhd::spectral {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_open(std::uint64_t bits) {
  // 53 random bits mapped into (0, 1).
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

Complex gaussian_at(std::uint64_t seed, int component, const Wavevector& k) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ std::uint64_t(component + 1));
  for (int a = 0; a < 3; ++a) h = splitmix64(h ^ std::uint64_t(std::int64_t(k[a]) + 0x10000));
  const double u1 = unit_open(h);
  const double u2 = unit_open(splitmix64(h));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

// Canonical member of the pair {k, -k}: first nonzero component positive.
bool is_canonical(const Wavevector& k) {
  for (int a = 0; a < 3; ++a) {
    if (k[a] != 0) return k[a] > 0;
  }
  return true;
}

}  // namespace

Field random_field(const GridPtr& grid, int components, std::uint64_t seed,
                   const RandomSpectrum& spectrum, bool solenoidal) {
  if (solenoidal && components != 3) {
    throw std::invalid_argument("random_field: solenoidal requires a vector field");
  }
  Field f(grid, components);
  const double kband = spectrum.kband > 0.0 ? spectrum.kband : std::numeric_limits<double>::infinity();
  const auto keep = grid->dealias_mask();
  for (std::size_t i = 0; i < grid->spectral_size(); ++i) {
    if (!keep[i]) continue;
    const double r = std::sqrt(grid->k2()[i]);
    if (r == 0.0 || r > kband) continue;
    const double amp = spectrum.envelope == Envelope::power ? std::pow(r, -spectrum.decay)
                                                            : std::exp(-spectrum.decay * r);
    const Wavevector k = grid->wavevector(i);
    const bool canon = is_canonical(k);
    const Wavevector rep = canon ? k : Wavevector{-k[0], -k[1], -k[2]};
    for (int c = 0; c < components; ++c) {
      const Complex z = amp * gaussian_at(seed, c, rep);
      f.component(c)[i] = canon ? z : std::conj(z);
    }
  }
  return solenoidal ? leray_project(f) : f;
}

}  // namespace hallmhd::spectral
