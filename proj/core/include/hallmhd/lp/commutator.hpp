#pragma once

#include <vector>

#include "hallmhd/lp/layout.hpp"

namespace hallmhd::lp {

/// R_j = Delta_j(v . grad f) - v . grad(Delta_j f), products dealiased.
Field commutator_advection(const Field& v, const Field& f, int j, const Layout& layout);

/// [Delta_j, b x] g = Delta_j(b x g) - b x Delta_j g, products dealiased.
Field commutator_cross(const Field& b, const Field& g, int j, const Layout& layout);

/// ||R_j||_{L2} for every shell, indexed by j + 1. Shares the full product
/// across shells.
std::vector<double> commutator_advection_norms(const Field& v, const Field& f, const Layout& layout);

}  // namespace hallmhd::lp
