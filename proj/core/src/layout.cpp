#include "hallmhd/lp/layout.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hallmhd::lp {

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

constexpr double kPlateau = 0.75;
constexpr double kSupport = 4.0 / 3.0;

}  // namespace

double chi(double r) { return 1.0 - smooth_step((r - kPlateau) / (kSupport - kPlateau)); }

double phi(double r) { return chi(0.5 * r) - chi(r); }

Layout::Layout(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("Layout: null grid");
  jmax_ = int(std::ceil(std::log2(double(grid_->kmax())))) + 2;
  const std::size_t m = grid_->spectral_size();
  const auto k2 = grid_->k2();
  blocks_.assign(shell_count(), std::vector<double>(m));
  lowpass_.assign(shell_count(), std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::sqrt(k2[i]);
    blocks_[0][i] = chi(r);
    for (int j = 0; j <= jmax_; ++j) blocks_[j + 1][i] = phi(std::ldexp(r, -j));
  }
  for (int j = 0; j <= jmax_; ++j) {
    for (std::size_t i = 0; i < m; ++i) lowpass_[j + 1][i] = lowpass_[j][i] + blocks_[j][i];
  }
}

void Layout::check(int j) const {
  if (j < -1 || j > jmax_) {
    throw std::out_of_range("shell index " + std::to_string(j) + " outside [-1, " + std::to_string(jmax_) + "]");
  }
}

std::span<const double> Layout::block_mask(int j) const {
  check(j);
  return blocks_[j + 1];
}

std::span<const double> Layout::lowpass_mask(int j) const {
  check(j);
  return lowpass_[j + 1];
}

Field Layout::apply(const Field& f, std::span<const double> mask) const {
  if (f.grid_ptr() != grid_) throw std::invalid_argument("Layout: field lives on another grid");
  Field out(f.grid_ptr(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = mask[i] * src[i];
  }
  return out;
}

Field Layout::block(const Field& f, int j) const { return apply(f, block_mask(j)); }

Field Layout::lowpass(const Field& f, int j) const { return apply(f, lowpass_mask(j)); }

Field Layout::highpass(const Field& f, int j) const {
  Field out = f;
  out -= lowpass(f, j);
  return out;
}

std::vector<double> Layout::block_norms(const Field& f) const {
  if (f.grid_ptr() != grid_) throw std::invalid_argument("Layout: field lives on another grid");
  const auto w = grid_->weight();
  std::vector<double> out(shell_count(), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double e = w[i] * std::norm(src[i]);
      if (e == 0.0) continue;
      for (int s = 0; s < shell_count(); ++s) {
        const double mk = blocks_[s][i];
        out[s] += mk * mk * e;
      }
    }
  }
  for (auto& v : out) v = std::sqrt(v * grid_->volume());
  return out;
}

}  // namespace hallmhd::lp
