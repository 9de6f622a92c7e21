#include "hallmhd/spectral/field.hpp"

#include <stdexcept>
#include <string>

namespace hallmhd::spectral {

PhysicalField::PhysicalField(GridPtr g, int ncomp)
    : grid(std::move(g)), components(ncomp), values(grid->physical_size() * ncomp, 0.0) {}

std::span<double> PhysicalField::component(int c) {
  const std::size_t m = grid->physical_size();
  return std::span<double>(values).subspan(c * m, m);
}

std::span<const double> PhysicalField::component(int c) const {
  const std::size_t m = grid->physical_size();
  return std::span<const double>(values).subspan(c * m, m);
}

Field::Field(GridPtr grid, int components)
    : grid_(std::move(grid)), components_(components) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  if (components != 1 && components != 3) {
    throw std::invalid_argument("Field: components must be 1 or 3");
  }
  data_.assign(grid_->spectral_size() * components_, Complex{});
}

std::span<Complex> Field::component(int c) {
  const std::size_t m = grid_->spectral_size();
  return std::span<Complex>(data_).subspan(c * m, m);
}

std::span<const Complex> Field::component(int c) const {
  const std::size_t m = grid_->spectral_size();
  return std::span<const Complex>(data_).subspan(c * m, m);
}

Complex Field::coeff(int c, const Wavevector& k) const {
  const auto loc = grid_->locate(k);
  if (!loc) throw std::out_of_range("wavevector not on grid");
  const Complex v = component(c)[loc->first];
  return loc->second ? std::conj(v) : v;
}

void Field::set_coeff(int c, const Wavevector& k, Complex value) {
  const auto loc = grid_->locate(k);
  if (!loc) throw std::out_of_range("wavevector not on grid");
  // -k may be stored separately (the plane with zero last wavenumber).
  const int n = grid_->n();
  auto wrap = [n](int v) { return v == n / 2 ? -n / 2 : v; };
  const auto mirror = grid_->locate({wrap(-k[0]), wrap(-k[1]), wrap(-k[2])});
  if (mirror) component(c)[mirror->first] = mirror->second ? value : std::conj(value);
  component(c)[loc->first] = loc->second ? std::conj(value) : value;
}

bool Field::same_shape(const Field& other) const noexcept {
  return grid_ == other.grid_ && components_ == other.components_;
}

namespace {
void require_same(const Field& a, const Field& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("field shape mismatch");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Field& Field::operator*=(double a) {
  for (auto& c : data_) c *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& x) {
  require_same(*this, x);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
  return *this;
}

Field transform_to_spectral(const PhysicalField& samples) {
  if (!samples.grid) throw std::invalid_argument("transform_to_spectral: null grid");
  if (samples.values.size() != samples.grid->physical_size() * samples.components) {
    throw std::invalid_argument("transform_to_spectral: shape mismatch");
  }
  Field f(samples.grid, samples.components);
  for (int c = 0; c < samples.components; ++c) {
    samples.grid->forward(samples.component(c), f.component(c));
  }
  return f;
}

PhysicalField transform_to_physical(const Field& f) {
  PhysicalField out(f.grid_ptr(), f.components());
  for (int c = 0; c < f.components(); ++c) f.grid().inverse(f.component(c), out.component(c));
  return out;
}

}  // namespace hallmhd::spectral
