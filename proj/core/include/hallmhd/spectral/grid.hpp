#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hallmhd::spectral {

using Complex = std::complex<double>;
using Wavevector = std::array<int, 3>;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Periodic grid on [0, 2pi)^dim with n points per axis.
///
/// Spectral storage follows the real-to-complex layout: the last axis keeps
/// only the non-negative wavenumbers 0..n/2, the other axes are stored in
/// FFT order (0, 1, ..., n/2-1, -n/2, ..., -1). Coefficients are Fourier
/// series coefficients, f(x) = sum_k c_k exp(i k.x), so that
/// ||f||_{L2}^2 = (2pi)^dim * sum_k |c_k|^2 and the grid average of |f|^2
/// equals sum_k |c_k|^2.
///
/// In dim = 2 fields carry three components and depend on (x, y) only.
///
/// A Grid is immutable after construction. Transforms may be called
/// concurrently from several threads.
class Grid {
 public:
  /// Throws std::invalid_argument if dim is not 2 or 3, n < 8, or n is not
  /// a power of two. Returns the live instance for (dim, n) if one exists.
  static GridPtr make(int dim, int n);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  int kmax() const noexcept { return n_ / 2; }
  /// Largest wavenumber per axis kept by the 2/3 rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }
  double spacing() const noexcept;
  /// (2pi)^dim, the torus volume.
  double volume() const noexcept;

  std::size_t physical_size() const noexcept { return physical_size_; }
  std::size_t spectral_size() const noexcept { return spectral_size_; }
  std::array<int, 3> physical_shape() const noexcept;
  std::array<int, 3> spectral_shape() const noexcept;

  /// Wavenumber tuple of spectral index idx (Nyquist reported as -n/2 on
  /// full axes and +n/2 on the half axis). Unused axes report 0.
  Wavevector wavevector(std::size_t idx) const noexcept;
  /// Storage index of k and whether the stored value is the conjugate of
  /// c_k. Returns nullopt if k is outside [-n/2, n/2) per axis or has a
  /// nonzero z-component in dim = 2.
  std::optional<std::pair<std::size_t, bool>> locate(const Wavevector& k) const noexcept;

  /// Derivative wavenumbers; the Nyquist entry is zero so derivatives of
  /// real fields stay real.
  std::span<const double> dk(int axis) const noexcept { return dk_[axis]; }
  /// |k|^2 with the full (signed) wavenumbers.
  std::span<const double> k2() const noexcept { return k2_; }
  /// Multiplicity of each stored mode in sums over the full spectrum (1 or 2).
  std::span<const double> weight() const noexcept { return weight_; }
  /// 1 if the mode survives the 2/3 rule, 0 otherwise.
  std::span<const std::uint8_t> dealias_mask() const noexcept { return keep_; }

  /// Physical samples -> Fourier series coefficients.
  void forward(std::span<const double> physical, std::span<Complex> spectral) const;
  /// Fourier series coefficients -> physical samples.
  void inverse(std::span<const Complex> spectral, std::span<double> physical) const;

 private:
  Grid(int dim, int n);

  int dim_;
  int n_;
  std::size_t physical_size_;
  std::size_t spectral_size_;
  std::array<std::vector<double>, 3> dk_;
  std::vector<double> k2_;
  std::vector<double> weight_;
  std::vector<std::uint8_t> keep_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace hallmhd::spectral
