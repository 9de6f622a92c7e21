#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hallmhd/report.hpp"
#include "hallmhd/solver/config.hpp"
#include "hallmhd/spectral/field.hpp"

namespace hallmhd::analysis {

/// Fixed perturbation direction w = (w_u, w_b): seeded, divergence-free,
/// scaled so that ||w_u||_{H^s}^2 + ||w_b||_{H^s}^2 = 1.
struct PerturbationSpec {
  std::uint64_t seed = 7;
  spectral::RandomSpectrum spectrum{6.0, 2.0, spectral::Envelope::power};
};

spectral::MhdState perturbation_direction(const PerturbationSpec& spec, const spectral::GridPtr& grid, double s);

struct DependenceOptions {
  /// Strictly decreasing, nonnegative.
  std::vector<double> eps;
  /// Mollification levels, each in [0, jmax].
  std::vector<int> j_list;
  PerturbationSpec perturbation;
  /// Multiplies the largest observed piece-to-bound ratio.
  double headroom = 1.1;
};

/// Sup over time of the three squared H^s pieces for one (eps, j), with
/// (u_j, b_j) started from S_j of the base data and (u^n_j, b^n_j) from
/// S_j of the perturbed data:
///   mollified_pair  = ||u^n_j - u_j||^2 + ||b^n_j - b_j||^2
///   perturbed_tail  = ||u^n_j - u^n||^2 + ||b^n_j - b^n||^2
///   base_tail       = ||u_j - u||^2 + ||b_j - b||^2
/// bound = ||(Id-S_j)u0||^2 + ||(Id-S_j)b0||^2 + 2^{2j} ||w0^n - w0||^2.
struct DependenceCell {
  int j = 0;
  double mollified_pair = 0.0;
  double perturbed_tail = 0.0;
  double base_tail = 0.0;
  double bound = 0.0;
  /// (mollified_pair + perturbed_tail + base_tail) / bound
  double ratio = 0.0;
};

struct DependenceRow {
  double eps = 0.0;
  bool flagged = false;
  std::string flag_reason;
  /// sup_t (||du|| + ||db||) in H^s and H^{s-1}
  double sup_error_hs = 0.0;
  double sup_error_hsm1 = 0.0;
  /// sup_t (||du||^2 + ||db||^2) in H^s
  double sup_error_hs_sq = 0.0;
  std::vector<DependenceCell> cells;
  int best_j = 0;
  double best_bound = 0.0;
  /// sup_error_hs_sq / (3 fitted_constant best_bound)
  double domination = 0.0;
  bool dominated = false;
};

struct MollificationRow {
  int j = 0;
  double tail_u = 0.0;  // ||(Id-S_j)u0||_{H^s}
  double tail_b = 0.0;
  /// ||S_j u0||^2 + ||S_j b0||^2 in H^{s+1}
  double data_hs_plus1_sq = 0.0;
  /// sup_t of the same quantity along the mollified base run
  double sup_hs_plus1_sq = 0.0;
};

struct DependenceReport {
  std::vector<double> eps_list;
  std::vector<double> sup_errors_hs;
  std::vector<double> sup_errors_hsm1;
  double rate_hs = 0.0;
  double rate_hsm1 = 0.0;
  std::vector<DependenceRow> rows;
  std::vector<MollificationRow> mollification;
  double fitted_constant = 0.0;
  double headroom = 1.1;
  /// sup_t H^{s+1} of mollified runs against their data (per j).
  InequalityReport regularity;
  double t_end = 0.0;
  double dt = 0.0;
  int members = 0;
  bool pass = false;
  std::map<std::string, std::string> metadata;
};

/// One lockstep ensemble: the base run, one perturbed run per eps, one
/// mollified base run per j and one mollified perturbed run per (eps, j).
/// Throws ConfigError on invalid options.
DependenceReport continuous_dependence_experiment(const solver::SimConfig& base, const DependenceOptions& options);

}  // namespace hallmhd::analysis
