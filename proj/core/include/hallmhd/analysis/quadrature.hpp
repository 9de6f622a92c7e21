#pragma once

#include <span>
#include <vector>

namespace hallmhd::analysis {

/// Running trapezoid integral: out[i] = integral of f from t[0] to t[i].
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> f);

/// Running fourth-order integral on uniformly spaced samples. Even
/// intervals use composite Simpson; odd counts finish with the 3/8 rule.
/// Falls back to the trapezoid for fewer than three samples. Throws
/// std::invalid_argument for non-uniform spacing.
std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f);

/// Integral up to an arbitrary time by trapezoid, interpolating linearly in
/// the last partial interval. t_query outside [t.front(), t.back()] throws
/// std::out_of_range.
double trapezoid_until(std::span<const double> t, std::span<const double> f, double t_query);

/// Least-squares slope of log(y) against log(x) over the positive pairs.
/// NaN with fewer than two usable pairs.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hallmhd::analysis
