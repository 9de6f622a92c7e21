#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace hallmhd {

/// How the fitted constant enters the bound.
///   linear:   lhs <= C * rhs, rhs stored without C.
///   gronwall: C appears inside the bound (typically in an exponent); rhs is
///             stored evaluated at the fitted constant.
enum class BoundForm { linear, gronwall };

/// Left and right sides of one inequality along a trajectory (or over a set
/// of samples), with the smallest constant that makes it hold.
struct InequalityReport {
  std::string name;
  BoundForm form = BoundForm::linear;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double fitted_constant = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  bool pass = false;
  /// The underlying run stopped before its horizon.
  bool partial = false;
  std::map<std::string, double> values;
  std::map<std::string, std::vector<double>> series;
  std::map<std::string, std::string> metadata;

  /// Recomputes pass from fitted_constant and threshold.
  void judge() {
    pass = std::isfinite(fitted_constant) && fitted_constant >= 0.0 && fitted_constant <= threshold && !partial;
  }
};

}  // namespace hallmhd
