#include "hallmhd/lp/sobolev.hpp"

#include <cmath>

namespace hallmhd::lp {

namespace {

template <typename Symbol>
double weighted_sum(const Field& f, Symbol symbol) {
  const auto& g = f.grid();
  const auto w = g.weight();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    double e = 0.0;
    for (int c = 0; c < f.components(); ++c) e += std::norm(f.component(c)[i]);
    if (e != 0.0) sum += w[i] * symbol(i) * e;
  }
  return sum * g.volume();
}

}  // namespace

double sobolev_norm(const Field& f, double s) {
  const auto k2 = f.grid().k2();
  return std::sqrt(weighted_sum(f, [&](std::size_t i) { return std::pow(1.0 + k2[i], s); }));
}

double sobolev_norm(const Field& f, const SobolevSpec& spec, const Layout& layout) {
  if (spec.style == SobolevStyle::weight) return sobolev_norm(f, spec.s);
  const auto blocks = layout.block_norms(f);
  double sum = 0.0;
  for (int j = -1; j <= layout.jmax(); ++j) {
    const double w = std::exp2(2.0 * j * spec.s);
    sum += w * blocks[j + 1] * blocks[j + 1];
  }
  return std::sqrt(sum);
}

double gradient_sobolev_norm(const Field& f, double r) {
  const auto& g = f.grid();
  const auto k2 = g.k2();
  return std::sqrt(weighted_sum(f, [&](std::size_t i) {
    double kk = 0.0;
    for (int a = 0; a < g.dim(); ++a) kk += g.dk(a)[i] * g.dk(a)[i];
    return kk * std::pow(1.0 + k2[i], r);
  }));
}

}  // namespace hallmhd::lp
