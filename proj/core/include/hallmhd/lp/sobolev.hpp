#pragma once

#include "hallmhd/lp/layout.hpp"

namespace hallmhd::lp {

enum class SobolevStyle {
  /// (sum_k (1 + |k|^2)^s |f_k|^2)^{1/2}, times the torus volume factor
  weight,
  /// (sum_j 2^{2js} ||Delta_j f||_{L2}^2)^{1/2}
  blocks,
};

struct SobolevSpec {
  double s = 0.0;
  SobolevStyle style = SobolevStyle::weight;
};

/// Weight-style H^s norm. Vector fields sum over components.
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const Field& f, const SobolevSpec& spec, const Layout& layout);
/// ||grad f||_{H^r}: (sum_{a,c} ||d_a f_c||_{H^r}^2)^{1/2}.
double gradient_sobolev_norm(const Field& f, double r);

}  // namespace hallmhd::lp
