#include "hallmhd/analysis/lp_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "hallmhd/lp/sobolev.hpp"

namespace hallmhd::analysis {

LpAnalysis lp_analyze(const spectral::MhdState& state, const lp::Layout& layout, double s) {
  LpAnalysis a;
  a.s = s;
  for (int j = lp::Layout::jmin(); j <= layout.jmax(); ++j) a.j.push_back(j);
  a.block_u = layout.block_norms(state.u);
  a.block_b = layout.block_norms(state.b);
  const lp::SobolevSpec weight{s, lp::SobolevStyle::weight};
  const lp::SobolevSpec blocks{s, lp::SobolevStyle::blocks};
  a.hs_weight_u = lp::sobolev_norm(state.u, weight, layout);
  a.hs_blocks_u = lp::sobolev_norm(state.u, blocks, layout);
  a.hs_weight_b = lp::sobolev_norm(state.b, weight, layout);
  a.hs_blocks_b = lp::sobolev_norm(state.b, blocks, layout);

  const std::size_t m = layout.grid().spectral_size();
  std::vector<double> total(m, 0.0);
  for (int j : a.j) {
    const auto mask = layout.block_mask(j);
    for (std::size_t i = 0; i < m; ++i) total[i] += mask[i];
  }
  for (double t : total) a.partition_defect = std::max(a.partition_defect, std::abs(t - 1.0));
  return a;
}

}  // namespace hallmhd::analysis
