#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "hallmhd/spectral/field.hpp"

namespace testing {

using hallmhd::spectral::Field;
using hallmhd::spectral::GridPtr;

using VectorFn = std::function<std::array<double, 3>(double, double, double)>;
using ScalarFn = std::function<double(double, double, double)>;

inline void visit_points(const hallmhd::spectral::Grid& g, const std::function<void(std::size_t, double, double, double)>& fn) {
  const auto shape = g.physical_shape();
  const double h = g.spacing();
  std::size_t idx = 0;
  for (int i = 0; i < shape[0]; ++i)
    for (int j = 0; j < shape[1]; ++j)
      for (int k = 0; k < shape[2]; ++k) fn(idx++, i * h, j * h, k * h);
}

inline Field sample(const GridPtr& grid, const ScalarFn& f) {
  hallmhd::spectral::PhysicalField p(grid, 1);
  visit_points(*grid, [&](std::size_t i, double x, double y, double z) { p.values[i] = f(x, y, z); });
  return hallmhd::spectral::transform_to_spectral(p);
}

inline Field sample(const GridPtr& grid, const VectorFn& f) {
  hallmhd::spectral::PhysicalField p(grid, 3);
  const std::size_t m = grid->physical_size();
  visit_points(*grid, [&](std::size_t i, double x, double y, double z) {
    const auto v = f(x, y, z);
    for (int c = 0; c < 3; ++c) p.values[c * m + i] = v[c];
  });
  return hallmhd::spectral::transform_to_spectral(p);
}

// max |a - b| over coefficients
inline double max_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

inline double max_abs(const Field& a) {
  double d = 0.0;
  for (const auto& c : a.data()) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace testing
