#pragma once

#include <span>
#include <vector>

#include "hallmhd/lp/layout.hpp"
#include "hallmhd/solver/solver.hpp"

namespace hallmhd::analysis {

using spectral::MhdState;

/// Terms of the dyadic energy balance of one shell at one time.
///
/// For a single solution (u, b) the terms are I1..I5:
///   I1 = -<[D_j, u.grad] u, D_j u>      I2 = -<[D_j, u.grad] b, D_j b>
///   I3 =  <[D_j, b.grad] b, D_j u>      I4 =  <[D_j, b.grad] u, D_j b>
///   I5 =  <[D_j, b x](curl b), curl D_j b>
/// and they satisfy
///   d/dt shell_energy + dissipation = I1 + ... + I5
/// with shell_energy = (||D_j u||^2 + ||D_j b||^2)/2 and
/// dissipation = <(-Delta)^alpha D_j b, D_j b>.
///
/// For a pair of solutions the terms are J1..J8 of the difference system in
/// (du, db) = (u1 - u2, b1 - b2), with the same balance.
struct ShellBudgetRow {
  double t = 0.0;
  std::vector<double> terms;
  double shell_energy = 0.0;
  double dissipation = 0.0;
};

ShellBudgetRow energy_terms_at(const MhdState& state, const lp::Layout& layout, int j, double alpha);
ShellBudgetRow difference_terms_at(const MhdState& first, const MhdState& second, const lp::Layout& layout, int j,
                                   double alpha);

/// Per-snapshot I1..I5. Requires one snapshot per step (snapshot_stride = 1).
std::vector<ShellBudgetRow> energy_terms(const solver::Trajectory& trajectory, const lp::Layout& layout, int j,
                                         double alpha);

/// Per-snapshot J1..J8 of two trajectories stepped in lockstep. Throws
/// std::invalid_argument if grids or snapshot times differ.
std::vector<ShellBudgetRow> difference_terms(const solver::Trajectory& first, const solver::Trajectory& second,
                                             const lp::Layout& layout, int j, double alpha);

/// Finite-difference audit of a balance: the shell-energy derivative is
/// taken with the fourth-order central stencil on interior samples, and
/// residual = derivative + dissipation - sum(terms).
struct BudgetAudit {
  std::vector<double> times;
  std::vector<double> derivative;
  std::vector<double> residual;
  double max_residual = 0.0;
  /// max over samples of |derivative| + |dissipation| + sum |terms|
  double scale = 0.0;
  double relative_residual = 0.0;
  double dt = 0.0;
};

/// Throws std::invalid_argument for fewer than five rows or non-uniform
/// sample spacing.
BudgetAudit audit_budget(std::span<const ShellBudgetRow> rows);

/// Global energy law along the diagnostics rows:
///   defect(t) = |E(t) + int_0^t dissipation - E(0)| / E(0).
/// Uniformly spaced rows use the fourth-order running integral, others the
/// trapezoid. Returns the maximum over rows (0 for zero energy).
double energy_law_defect(const solver::Trajectory& trajectory);

}  // namespace hallmhd::analysis
