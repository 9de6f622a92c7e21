#include "hallmhd/analysis/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hallmhd::analysis {

namespace {

void require_match(std::span<const double> t, std::span<const double> f) {
  if (t.size() != f.size()) throw std::invalid_argument("quadrature: time and value series differ in length");
}

}  // namespace

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> f) {
  require_match(t, f);
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f) {
  require_match(t, f);
  if (t.size() < 3) return cumulative_trapezoid(t, f);
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument("cumulative_simpson: samples are not uniformly spaced");
    }
  }
  std::vector<double> out(t.size(), 0.0);
  // even indices: Simpson from 0
  for (std::size_t i = 2; i < t.size(); i += 2) out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  // odd indices: 3/8 rule over the first three intervals, Simpson after
  if (t.size() >= 4) {
    out[3] = 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
    for (std::size_t i = 5; i < t.size(); i += 2) out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  }
  // index 1: quadratic through the first three samples
  out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
  return out;
}

double trapezoid_until(std::span<const double> t, std::span<const double> f, double t_query) {
  require_match(t, f);
  if (t.empty() || t_query < t.front() || t_query > t.back()) {
    throw std::out_of_range("trapezoid_until: time outside the sampled range");
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t_query) {
      acc += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
      continue;
    }
    const double w = (t_query - t[i - 1]) / (t[i] - t[i - 1]);
    const double fq = f[i - 1] + w * (f[i] - f[i - 1]);
    acc += 0.5 * (t_query - t[i - 1]) * (f[i - 1] + fq);
    break;
  }
  return acc;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = m * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / den;
}

}  // namespace hallmhd::analysis
