#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hallmhd/analysis/budget.hpp"
#include "hallmhd/analysis/dependence.hpp"
#include "hallmhd/analysis/lp_analysis.hpp"
#include "hallmhd/report.hpp"
#include "hallmhd/solver/solver.hpp"

namespace hallmhd::io {

inline constexpr std::string_view kInequalitySchema = "hallmhd.inequality_report/1";
inline constexpr std::string_view kDependenceSchema = "hallmhd.dependence_report/1";
inline constexpr std::string_view kSuiteSchema = "hallmhd.suite/1";
inline constexpr std::string_view kBudgetSchema = "hallmhd.budget_audit/1";
inline constexpr std::string_view kTrajectorySchema = "hallmhd.trajectory/1";
inline constexpr std::string_view kLpSchema = "hallmhd.lp_analysis/1";

/// Non-finite reals are written as the strings "inf", "-inf" and "nan".
std::string to_json(const InequalityReport& report);
/// Throws ConfigError on schema mismatch or malformed input.
InequalityReport inequality_report_from_json(std::string_view text);

std::string to_json(const analysis::DependenceReport& report);

/// Several reports under one verdict.
struct Suite {
  std::string name;
  bool pass = false;
  std::vector<InequalityReport> reports;
  std::map<std::string, double> values;
  std::map<std::string, std::string> metadata;
};
std::string to_json(const Suite& suite);

/// Budget audit of one shell together with its per-time terms.
struct ShellAudit {
  std::string kind;  // "energy" or "difference"
  int j = 0;
  std::vector<analysis::ShellBudgetRow> rows;
  analysis::BudgetAudit audit;
};
std::string to_json(const std::vector<ShellAudit>& audits, double tolerance, bool pass);

std::string trajectory_summary_json(const solver::Trajectory& trajectory);
std::string to_json(const analysis::LpAnalysis& analysis);

/// CSV with a header row; reals with 17 significant digits.
///   report:      t,lhs,rhs[,series...] (series of matching length only)
///   dependence:  one row per (eps, j)
///   mollification: one row per j
///   diagnostics: one row per trajectory row
///   shell audit: t,shell_energy,dissipation,term_1..term_m,residual
///   lp:          j,block_u,block_b
std::string to_csv(const InequalityReport& report);
std::string dependence_csv(const analysis::DependenceReport& report);
std::string mollification_csv(const analysis::DependenceReport& report);
std::string diagnostics_csv(const solver::Trajectory& trajectory);
std::string shell_audit_csv(const ShellAudit& audit);
std::string lp_csv(const analysis::LpAnalysis& analysis);

/// Human-readable rendering of any JSON document produced above, plus the
/// plot-ready CSV files it maps to (file name -> contents).
struct Rendering {
  std::string text;
  std::map<std::string, std::string> csv;
};
/// Throws ConfigError for unknown schemas or malformed JSON.
Rendering render_report(std::string_view json_text);

}  // namespace hallmhd::io
