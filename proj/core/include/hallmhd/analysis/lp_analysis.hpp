#pragma once

#include <vector>

#include "hallmhd/lp/layout.hpp"
#include "hallmhd/spectral/field.hpp"

namespace hallmhd::analysis {

/// Dyadic profile of a state: block norms of u and b for j = -1..jmax and
/// both Sobolev norm styles.
struct LpAnalysis {
  double s = 0.0;
  std::vector<int> j;
  std::vector<double> block_u, block_b;
  double hs_weight_u = 0.0, hs_blocks_u = 0.0;
  double hs_weight_b = 0.0, hs_blocks_b = 0.0;
  /// max over grid modes of |sum_j block_j(k) - 1|
  double partition_defect = 0.0;
};

LpAnalysis lp_analyze(const spectral::MhdState& state, const lp::Layout& layout, double s);

}  // namespace hallmhd::analysis
