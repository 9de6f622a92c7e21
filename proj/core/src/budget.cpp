#include "hallmhd/analysis/budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hallmhd/analysis/quadrature.hpp"
#include "hallmhd/spectral/operators.hpp"

namespace hallmhd::analysis {

using spectral::advect;
using spectral::cross;
using spectral::curl;
using spectral::Field;
using spectral::inner;

namespace {

// <Delta_j(full) - local, test>
double commutator_pairing(const lp::Layout& layout, int j, const Field& full, const Field& local, const Field& test) {
  return inner(layout.block(full, j), test) - inner(local, test);
}

double dissipation_of(const Field& bj, double alpha) {
  return inner(spectral::fractional_laplacian(bj, alpha), bj);
}

void require_dense(const solver::Trajectory& tr) {
  if (tr.snapshots.size() != tr.rows.size()) {
    throw std::invalid_argument("budget terms need one snapshot per step (snapshot_stride = 1)");
  }
}

}  // namespace

ShellBudgetRow energy_terms_at(const MhdState& s, const lp::Layout& layout, int j, double alpha) {
  const Field& u = s.u;
  const Field& b = s.b;
  const Field uj = layout.block(u, j);
  const Field bj = layout.block(b, j);
  const Field curl_b = curl(b);
  const Field curl_bj = curl(bj);

  ShellBudgetRow row;
  row.t = s.t;
  row.terms.resize(5);
  row.terms[0] = -commutator_pairing(layout, j, advect(u, u), advect(u, uj), uj);
  row.terms[1] = -commutator_pairing(layout, j, advect(u, b), advect(u, bj), bj);
  row.terms[2] = commutator_pairing(layout, j, advect(b, b), advect(b, bj), uj);
  row.terms[3] = commutator_pairing(layout, j, advect(b, u), advect(b, uj), bj);
  row.terms[4] = commutator_pairing(layout, j, cross(b, curl_b), cross(b, curl_bj), curl_bj);
  row.shell_energy = 0.5 * (inner(uj, uj) + inner(bj, bj));
  row.dissipation = dissipation_of(bj, alpha);
  return row;
}

ShellBudgetRow difference_terms_at(const MhdState& first, const MhdState& second, const lp::Layout& layout, int j,
                                   double alpha) {
  const Field& u1 = first.u;
  const Field& b1 = first.b;
  const Field& u2 = second.u;
  const Field& b2 = second.b;
  const Field du = u1 - u2;
  const Field db = b1 - b2;
  const Field duj = layout.block(du, j);
  const Field dbj = layout.block(db, j);
  const Field curl_db = curl(db);
  const Field curl_dbj = curl(dbj);

  ShellBudgetRow row;
  row.t = first.t;
  row.terms.resize(8);
  row.terms[0] = -commutator_pairing(layout, j, advect(u1, du), advect(u1, duj), duj);
  row.terms[1] = -commutator_pairing(layout, j, advect(u1, db), advect(u1, dbj), dbj);
  row.terms[2] = commutator_pairing(layout, j, advect(b1, db), advect(b1, dbj), duj);
  row.terms[3] = commutator_pairing(layout, j, advect(b1, du), advect(b1, duj), dbj);
  row.terms[4] = inner(layout.block(advect(db, b2) - advect(du, u2), j), duj);
  row.terms[5] = inner(layout.block(advect(db, u2) - advect(du, b2), j), dbj);
  row.terms[6] = commutator_pairing(layout, j, cross(b1, curl_db), cross(b1, curl_dbj), curl_dbj);
  row.terms[7] = -inner(layout.block(cross(curl(b2), db), j), curl_dbj);
  row.shell_energy = 0.5 * (inner(duj, duj) + inner(dbj, dbj));
  row.dissipation = dissipation_of(dbj, alpha);
  return row;
}

std::vector<ShellBudgetRow> energy_terms(const solver::Trajectory& trajectory, const lp::Layout& layout, int j,
                                         double alpha) {
  require_dense(trajectory);
  std::vector<ShellBudgetRow> rows;
  rows.reserve(trajectory.snapshots.size());
  for (const auto& s : trajectory.snapshots) rows.push_back(energy_terms_at(s, layout, j, alpha));
  return rows;
}

std::vector<ShellBudgetRow> difference_terms(const solver::Trajectory& first, const solver::Trajectory& second,
                                             const lp::Layout& layout, int j, double alpha) {
  require_dense(first);
  require_dense(second);
  if (first.snapshots.size() != second.snapshots.size()) {
    throw std::invalid_argument("difference_terms: trajectories have different lengths");
  }
  std::vector<ShellBudgetRow> rows;
  rows.reserve(first.snapshots.size());
  for (std::size_t i = 0; i < first.snapshots.size(); ++i) {
    const auto& a = first.snapshots[i];
    const auto& b = second.snapshots[i];
    if (a.u.grid_ptr() != b.u.grid_ptr()) throw std::invalid_argument("difference_terms: grid mismatch");
    if (std::abs(a.t - b.t) > 1e-12 * std::max(1.0, std::abs(a.t))) {
      throw std::invalid_argument("difference_terms: snapshot times differ");
    }
    rows.push_back(difference_terms_at(a, b, layout, j, alpha));
  }
  return rows;
}

BudgetAudit audit_budget(std::span<const ShellBudgetRow> rows) {
  if (rows.size() < 5) throw std::invalid_argument("audit_budget: need at least five samples");
  const double h = rows[1].t - rows[0].t;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs((rows[i].t - rows[i - 1].t) - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument("audit_budget: samples are not uniformly spaced");
    }
  }
  BudgetAudit audit;
  audit.dt = h;
  for (std::size_t i = 2; i + 2 < rows.size(); ++i) {
    const double d = (rows[i - 2].shell_energy - 8.0 * rows[i - 1].shell_energy + 8.0 * rows[i + 1].shell_energy -
                      rows[i + 2].shell_energy) /
                     (12.0 * h);
    double sum = 0.0;
    double mag = std::abs(d) + std::abs(rows[i].dissipation);
    for (double term : rows[i].terms) {
      sum += term;
      mag += std::abs(term);
    }
    const double r = d + rows[i].dissipation - sum;
    audit.times.push_back(rows[i].t);
    audit.derivative.push_back(d);
    audit.residual.push_back(r);
    audit.max_residual = std::max(audit.max_residual, std::abs(r));
    audit.scale = std::max(audit.scale, mag);
  }
  audit.relative_residual = audit.scale > 0.0 ? audit.max_residual / audit.scale : 0.0;
  return audit;
}

double energy_law_defect(const solver::Trajectory& trajectory) {
  if (trajectory.rows.empty()) return 0.0;
  std::vector<double> t, d;
  for (const auto& r : trajectory.rows) {
    t.push_back(r.t);
    d.push_back(r.dissipation);
  }
  std::vector<double> integral;
  try {
    integral = cumulative_simpson(t, d);
  } catch (const std::invalid_argument&) {
    integral = cumulative_trapezoid(t, d);
  }
  const double e0 = trajectory.rows.front().energy;
  if (e0 <= 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    worst = std::max(worst, std::abs(trajectory.rows[i].energy + integral[i] - e0) / e0);
  }
  return worst;
}

}  // namespace hallmhd::analysis
