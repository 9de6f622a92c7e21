#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hallmhd/spectral/grid.hpp"

namespace hallmhd::spectral {

/// Real samples of a scalar (1 component) or vector (3 component) field,
/// stored component-major in row-major grid order.
struct PhysicalField {
  GridPtr grid;
  int components = 1;
  std::vector<double> values;

  PhysicalField() = default;
  PhysicalField(GridPtr g, int ncomp);

  std::span<double> component(int c);
  std::span<const double> component(int c) const;
};

/// Fourier series coefficients of a real field on a periodic grid.
///
/// Vector fields always carry three components. Arithmetic requires both
/// operands to live on the same grid with the same component count.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, int components);

  static Field scalar(GridPtr grid) { return Field(std::move(grid), 1); }
  static Field vector(GridPtr grid) { return Field(std::move(grid), 3); }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  bool empty() const noexcept { return !grid_; }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  /// c_k of component c for any wavevector on the grid (uses conjugate
  /// symmetry for the half that is not stored). Throws std::out_of_range.
  Complex coeff(int c, const Wavevector& k) const;
  /// Sets c_k and c_{-k} = conj(c_k).
  void set_coeff(int c, const Wavevector& k, Complex value);

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a);
  /// this += a * x
  Field& axpy(double a, const Field& x);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double a, Field f) { return f *= a; }

  bool same_shape(const Field& other) const noexcept;

 private:
  GridPtr grid_;
  int components_ = 0;
  std::vector<Complex> data_;
};

/// Velocity and magnetic field at time t.
struct MhdState {
  Field u;
  Field b;
  double t = 0.0;
};

Field transform_to_spectral(const PhysicalField& samples);
PhysicalField transform_to_physical(const Field& f);

}  // namespace hallmhd::spectral
