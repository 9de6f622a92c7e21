#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hallmhd/report.hpp"
#include "hallmhd/solver/solver.hpp"

namespace hallmhd::analysis {

using spectral::MhdState;

inline constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

/// A priori bound along one trajectory:
///   ||u||_{H^s}^2 + ||b||_{H^s}^2 <= D0 exp(C G(t)),
///   G(t) = int_0^t (lip_u + lip_b + lip_b^2),
/// with the H^s norms taken from the trajectory diagnostics (the s the run
/// was configured with). fitted_constant is the least C >= 0 that works.
InequalityReport verify_apriori_bound(const solver::Trajectory& trajectory, double threshold = kNoThreshold);

/// Norms of the difference of two lockstep trajectories, one entry per
/// common time.
struct DifferenceSeries {
  double s = 0.0;
  std::vector<double> t;
  std::vector<double> hs_du, hs_db;
  std::vector<double> hsm1_du, hsm1_db;

  void append(const MhdState& first, const MhdState& second);
  std::size_t size() const noexcept { return t.size(); }
};

/// From dense or sparse snapshots of two trajectories with equal times.
/// Throws std::invalid_argument on mismatched grids or times.
DifferenceSeries difference_series(const solver::Trajectory& first, const solver::Trajectory& second, double s);

/// int_0^t (1 + sum of the four H^s norms + sum of their squares), returned
/// for every common row time; the constant C is not included.
std::vector<double> a_functional_series(const solver::Trajectory& first, const solver::Trajectory& second);
/// Same integral evaluated at an arbitrary t inside the common time range.
double a_functional(const solver::Trajectory& first, const solver::Trajectory& second, double t);

/// The two difference bounds. With a(t) from a_functional_series:
///   weak:   ||du||_{H^{s-1}}^2 + ||db||_{H^{s-1}}^2 <= D0' exp(C a(t))
///   strong: ||du||_{H^s}^2 + ||db||_{H^s}^2
///             <= (D0 + C H(t)) exp(C a(t)),
///           H(t) = int_0^t (||u2||_{H^{s+1}}^2 + ||b2||_{H^{s+1}}^2)
///                          (||du||_{H^{s-1}}^2 + ||db||_{H^{s-1}}^2).
/// The difference series must be sampled at the trajectories' row times.
std::pair<InequalityReport, InequalityReport> verify_difference_bounds(const solver::Trajectory& first,
                                                                       const solver::Trajectory& second,
                                                                       const DifferenceSeries& diff,
                                                                       double threshold_weak = kNoThreshold,
                                                                       double threshold_strong = kNoThreshold);

/// One shared constant over a family: sup_t (||u^n||^2 + ||b^n||^2)_{H^s}
/// <= C (||u^n_0||^2 + ||b^n_0||^2)_{H^s} for every member n. lhs and rhs
/// hold the per-member sup and data; series "member_ratio" the ratios.
InequalityReport uniform_bound_check(std::span<const solver::Trajectory> family, double threshold = kNoThreshold);

}  // namespace hallmhd::analysis
