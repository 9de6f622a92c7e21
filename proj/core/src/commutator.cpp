#include "hallmhd/lp/commutator.hpp"

#include "hallmhd/spectral/operators.hpp"

namespace hallmhd::lp {

using spectral::advect;
using spectral::cross;
using spectral::l2_norm;

Field commutator_advection(const Field& v, const Field& f, int j, const Layout& layout) {
  Field r = layout.block(advect(v, f), j);
  r -= advect(v, layout.block(f, j));
  return r;
}

Field commutator_cross(const Field& b, const Field& g, int j, const Layout& layout) {
  Field r = layout.block(cross(b, g), j);
  r -= cross(b, layout.block(g, j));
  return r;
}

std::vector<double> commutator_advection_norms(const Field& v, const Field& f, const Layout& layout) {
  const Field full = advect(v, f);
  std::vector<double> out;
  out.reserve(layout.shell_count());
  for (int j = -1; j <= layout.jmax(); ++j) {
    Field r = layout.block(full, j);
    r -= advect(v, layout.block(f, j));
    out.push_back(l2_norm(r));
  }
  return out;
}

}  // namespace hallmhd::lp
