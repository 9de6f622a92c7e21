#pragma once

#include <cstdint>

#include "hallmhd/spectral/field.hpp"

namespace hallmhd::spectral {

enum class Envelope { power, exponential };

/// Shape of a random spectrum: modes with 0 < |k| <= kband receive
/// independent complex Gaussian coefficients scaled by |k|^-decay (power)
/// or exp(-decay |k|) (exponential). kband <= 0 means every mode kept by
/// the 2/3 rule.
struct RandomSpectrum {
  double kband = 0.0;
  double decay = 4.0;
  Envelope envelope = Envelope::power;
};

/// Random real field. Each coefficient is a pure function of
/// (seed, component, wavevector), so one seed gives the same low modes on
/// every grid resolution. The result is dealiased; with solenoidal = true
/// (vector fields only) it is also Leray-projected.
Field random_field(const GridPtr& grid, int components, std::uint64_t seed,
                   const RandomSpectrum& spectrum, bool solenoidal = false);

}  // namespace hallmhd::spectral
