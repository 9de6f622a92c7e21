#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hallmhd/spectral/grid.hpp"
#include "hallmhd/spectral/random.hpp"

namespace hallmhd::solver {

enum class Recipe { single_mode, taylor_green, orszag_tang_like, random_band };

std::string_view to_string(Recipe r);
/// Throws ConfigError naming the unknown recipe.
Recipe recipe_from_string(std::string_view name);

/// Initial data recipe. Amplitudes are peak values of the sinusoids for the
/// analytic recipes and root-mean-square values for random_band.
struct InitialDataSpec {
  Recipe recipe = Recipe::taylor_green;
  std::uint64_t seed = 1;
  double amplitude_u = 1.0;
  double amplitude_b = 1.0;
  /// Wavevector of single_mode.
  spectral::Wavevector mode{1, 0, 0};
  /// Spectrum of random_band (kband, decay, envelope).
  spectral::RandomSpectrum spectrum{8.0, 4.0, spectral::Envelope::power};
};

struct SimConfig {
  int dim = 2;
  int n = 64;
  double alpha = 1.0;
  double s = 2.5;
  double t_end = 0.5;
  /// Fixed step; nullopt selects the CFL rule every step. A fixed step is
  /// shrunk so that it divides t_end evenly.
  std::optional<double> dt;
  double dt_max = 1e-2;
  double cfl_safety = 0.4;
  InitialDataSpec initial;
  /// Keep every k-th step as a snapshot; 0 keeps only the first and last.
  int snapshot_stride = 0;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

}  // namespace hallmhd::solver
