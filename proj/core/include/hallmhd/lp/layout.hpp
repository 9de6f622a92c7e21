#pragma once

#include <span>
#include <vector>

#include "hallmhd/spectral/field.hpp"

namespace hallmhd::lp {

using spectral::Field;
using spectral::GridPtr;

/// Radial cutoff chi: smooth, radially decreasing, identically 1 on
/// |xi| <= 3/4 and supported in |xi| <= 4/3. The transition is the
/// exp(-1/t) smooth step.
double chi(double r);
/// phi(r) = chi(r/2) - chi(r), supported in the ring [3/4, 8/3].
double phi(double r);

/// Ring constants: every block j >= 0 lives in a 2^j <= |xi| <= b 2^j.
inline constexpr double kRingInner = 0.75;
inline constexpr double kRingOuter = 8.0 / 3.0;

/// Dyadic multiplier masks on one grid.
///   block(-1)  = chi(|k|)
///   block(j)   = phi(2^-j |k|),  j >= 0
///   lowpass(j) = sum_{q<j} block(q)  (zero for j = -1)
/// jmax = ceil(log2(kmax)) + 2; every block beyond it vanishes on the grid.
class Layout {
 public:
  explicit Layout(GridPtr grid);

  const spectral::Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  static constexpr int jmin() noexcept { return -1; }
  int jmax() const noexcept { return jmax_; }
  int shell_count() const noexcept { return jmax_ + 2; }

  /// Throws std::out_of_range for j outside [-1, jmax].
  std::span<const double> block_mask(int j) const;
  std::span<const double> lowpass_mask(int j) const;

  /// Delta_j f
  Field block(const Field& f, int j) const;
  /// S_j f
  Field lowpass(const Field& f, int j) const;
  /// (Id - S_j) f
  Field highpass(const Field& f, int j) const;

  /// ||Delta_j f||_{L2} for every j in [-1, jmax], indexed by j + 1.
  std::vector<double> block_norms(const Field& f) const;

 private:
  void check(int j) const;
  Field apply(const Field& f, std::span<const double> mask) const;

  GridPtr grid_;
  int jmax_;
  std::vector<std::vector<double>> blocks_;
  std::vector<std::vector<double>> lowpass_;
};

}  // namespace hallmhd::lp
