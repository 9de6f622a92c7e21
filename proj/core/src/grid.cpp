#include "hallmhd/spectral/grid.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hallmhd::spectral {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int signed_wavenumber(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

GridPtr Grid::make(int dim, int n) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("dim must be 2 or 3, got " + std::to_string(dim));
  }
  if (n <= 0 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw std::invalid_argument("n not a power of two: " + std::to_string(n));
  }
  if (n < 8) {
    throw std::invalid_argument("n must be at least 8, got " + std::to_string(n));
  }
  // one live instance per (dim, n), so fields from separate runs combine
  static std::mutex registry_mutex;
  static std::map<std::pair<int, int>, std::weak_ptr<const Grid>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[{dim, n}];
  if (auto live = slot.lock()) return live;
  GridPtr g(new Grid(dim, n));
  slot = g;
  return g;
}

Grid::Grid(int dim, int n) : dim_(dim), n_(n), plans_(std::make_unique<Plans>()) {
  const int half = n / 2 + 1;
  physical_size_ = dim == 2 ? std::size_t(n) * n : std::size_t(n) * n * n;
  spectral_size_ = dim == 2 ? std::size_t(n) * half : std::size_t(n) * n * half;

  for (auto& d : dk_) d.assign(spectral_size_, 0.0);
  k2_.resize(spectral_size_);
  weight_.resize(spectral_size_);
  keep_.resize(spectral_size_);

  const int cutoff = dealias_cutoff();
  for (std::size_t idx = 0; idx < spectral_size_; ++idx) {
    const Wavevector k = wavevector(idx);
    const int last = dim == 2 ? k[1] : k[2];
    double k2 = 0.0;
    bool keep = true;
    for (int a = 0; a < dim; ++a) {
      k2 += double(k[a]) * k[a];
      keep = keep && std::abs(k[a]) <= cutoff;
      dk_[a][idx] = std::abs(k[a]) == n / 2 ? 0.0 : double(k[a]);
    }
    k2_[idx] = k2;
    weight_[idx] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
    keep_[idx] = keep ? 1 : 0;
  }

  std::vector<double> rbuf(physical_size_);
  std::vector<Complex> cbuf(spectral_size_);
  auto* rp = rbuf.data();
  auto* cp = reinterpret_cast<fftw_complex*>(cbuf.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  if (dim == 2) {
    plans_->r2c = fftw_plan_dft_r2c_2d(n, n, rp, cp, flags);
    plans_->c2r = fftw_plan_dft_c2r_2d(n, n, cp, rp, flags);
  } else {
    plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, rp, cp, flags);
    plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, cp, rp, flags);
  }
  if (!plans_->r2c || !plans_->c2r) throw std::runtime_error("FFTW planning failed");
}

Grid::~Grid() = default;

double Grid::spacing() const noexcept { return 2.0 * std::numbers::pi / n_; }

double Grid::volume() const noexcept { return std::pow(2.0 * std::numbers::pi, dim_); }

std::array<int, 3> Grid::physical_shape() const noexcept {
  return dim_ == 2 ? std::array<int, 3>{n_, n_, 1} : std::array<int, 3>{n_, n_, n_};
}

std::array<int, 3> Grid::spectral_shape() const noexcept {
  const int half = n_ / 2 + 1;
  return dim_ == 2 ? std::array<int, 3>{n_, half, 1} : std::array<int, 3>{n_, n_, half};
}

Wavevector Grid::wavevector(std::size_t idx) const noexcept {
  const std::size_t half = std::size_t(n_ / 2 + 1);
  if (dim_ == 2) {
    const int i = int(idx / half);
    const int j = int(idx % half);
    return {signed_wavenumber(i, n_), j, 0};
  }
  const int l = int(idx % half);
  const std::size_t rest = idx / half;
  const int j = int(rest % n_);
  const int i = int(rest / n_);
  return {signed_wavenumber(i, n_), signed_wavenumber(j, n_), l};
}

std::optional<std::pair<std::size_t, bool>> Grid::locate(const Wavevector& k) const noexcept {
  const int lo = -n_ / 2;
  const int hi = n_ / 2;
  for (int a = 0; a < 3; ++a) {
    if (a >= dim_) {
      if (k[a] != 0) return std::nullopt;
    } else if (k[a] < lo || k[a] >= hi) {
      return std::nullopt;
    }
  }
  Wavevector q = k;
  const int last = dim_ - 1;
  bool conj = false;
  if (q[last] < 0) {
    for (int a = 0; a < dim_; ++a) q[a] = -q[a];
    conj = true;
  }
  auto wrap = [this](int v) { return std::size_t(((v % n_) + n_) % n_); };
  const std::size_t half = std::size_t(n_ / 2 + 1);
  std::size_t idx;
  if (dim_ == 2) {
    idx = wrap(q[0]) * half + std::size_t(q[1]);
  } else {
    idx = (wrap(q[0]) * n_ + wrap(q[1])) * half + std::size_t(q[2]);
  }
  return std::make_pair(idx, conj);
}

void Grid::forward(std::span<const double> physical, std::span<Complex> spectral) const {
  if (physical.size() != physical_size_ || spectral.size() != spectral_size_) {
    throw std::invalid_argument("forward transform: shape mismatch");
  }
  // r2c with FFTW_UNALIGNED leaves the input untouched.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(physical.data()),
                       reinterpret_cast<fftw_complex*>(spectral.data()));
  const double scale = 1.0 / double(physical_size_);
  for (auto& c : spectral) c *= scale;
}

void Grid::inverse(std::span<const Complex> spectral, std::span<double> physical) const {
  if (physical.size() != physical_size_ || spectral.size() != spectral_size_) {
    throw std::invalid_argument("inverse transform: shape mismatch");
  }
  // c2r destroys its input.
  thread_local std::vector<Complex> scratch;
  scratch.assign(spectral.begin(), spectral.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       physical.data());
}

}  // namespace hallmhd::spectral
