#include "hallmhd/analysis/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hallmhd/analysis/quadrature.hpp"
#include "hallmhd/lp/sobolev.hpp"

namespace hallmhd::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack for lhs <= data comparisons at the level of rounding.
constexpr double kSlack = 1e-12;

std::vector<double> row_times(const solver::Trajectory& tr) {
  std::vector<double> t;
  t.reserve(tr.rows.size());
  for (const auto& r : tr.rows) t.push_back(r.t);
  return t;
}

void require_common_times(const solver::Trajectory& a, const solver::Trajectory& b) {
  if (a.rows.size() != b.rows.size()) throw std::invalid_argument("trajectories have different numbers of rows");
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (std::abs(a.rows[i].t - b.rows[i].t) > 1e-12 * std::max(1.0, std::abs(a.rows[i].t))) {
      throw std::invalid_argument("trajectories are not sampled at common times");
    }
  }
}

// Least C >= 0 with lhs_i <= d0 exp(C g_i) for all i.
double fit_exponential(std::span<const double> lhs, double d0, std::span<const double> g) {
  double c = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] <= d0 * (1.0 + kSlack)) continue;
    if (d0 <= 0.0 || g[i] <= 0.0) return kInf;
    c = std::max(c, std::log(lhs[i] / d0) / g[i]);
  }
  return c;
}

}  // namespace

InequalityReport verify_apriori_bound(const solver::Trajectory& tr, double threshold) {
  InequalityReport rep;
  rep.name = "apriori_bound";
  rep.form = BoundForm::gronwall;
  rep.threshold = threshold;
  rep.partial = !tr.completed;
  if (tr.rows.empty()) throw std::invalid_argument("verify_apriori_bound: empty trajectory");

  rep.times = row_times(tr);
  std::vector<double> integrand;
  for (const auto& r : tr.rows) {
    rep.lhs.push_back(r.hs_u * r.hs_u + r.hs_b * r.hs_b);
    integrand.push_back(r.lip_u + r.lip_b + r.lip_b * r.lip_b);
  }
  const auto g = cumulative_trapezoid(rep.times, integrand);
  const double d0 = rep.lhs.front();
  rep.fitted_constant = fit_exponential(rep.lhs, d0, g);
  const double c = std::isfinite(rep.fitted_constant) ? rep.fitted_constant : 0.0;
  for (double gi : g) rep.rhs.push_back(d0 * std::exp(c * gi));
  rep.values["data"] = d0;
  rep.values["exponent_integral"] = g.back();
  rep.series["exponent_integral"] = g;
  rep.judge();
  return rep;
}

void DifferenceSeries::append(const MhdState& first, const MhdState& second) {
  const spectral::Field du = first.u - second.u;
  const spectral::Field db = first.b - second.b;
  t.push_back(first.t);
  hs_du.push_back(lp::sobolev_norm(du, s));
  hs_db.push_back(lp::sobolev_norm(db, s));
  hsm1_du.push_back(lp::sobolev_norm(du, s - 1.0));
  hsm1_db.push_back(lp::sobolev_norm(db, s - 1.0));
}

DifferenceSeries difference_series(const solver::Trajectory& first, const solver::Trajectory& second, double s) {
  if (first.snapshots.size() != second.snapshots.size()) {
    throw std::invalid_argument("difference_series: snapshot counts differ");
  }
  DifferenceSeries d;
  d.s = s;
  for (std::size_t i = 0; i < first.snapshots.size(); ++i) {
    const auto& a = first.snapshots[i];
    const auto& b = second.snapshots[i];
    if (a.u.grid_ptr() != b.u.grid_ptr()) throw std::invalid_argument("difference_series: grid mismatch");
    if (std::abs(a.t - b.t) > 1e-12 * std::max(1.0, std::abs(a.t))) {
      throw std::invalid_argument("difference_series: snapshot times differ");
    }
    d.append(a, b);
  }
  return d;
}

std::vector<double> a_functional_series(const solver::Trajectory& first, const solver::Trajectory& second) {
  require_common_times(first, second);
  std::vector<double> f;
  f.reserve(first.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    const auto& p = first.rows[i];
    const auto& q = second.rows[i];
    const double lin = p.hs_u + q.hs_u + p.hs_b + q.hs_b;
    const double sq = p.hs_u * p.hs_u + q.hs_u * q.hs_u + p.hs_b * p.hs_b + q.hs_b * q.hs_b;
    f.push_back(1.0 + lin + sq);
  }
  return cumulative_trapezoid(row_times(first), f);
}

double a_functional(const solver::Trajectory& first, const solver::Trajectory& second, double t) {
  require_common_times(first, second);
  const auto times = row_times(first);
  std::vector<double> f;
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    const auto& p = first.rows[i];
    const auto& q = second.rows[i];
    f.push_back(1.0 + p.hs_u + q.hs_u + p.hs_b + q.hs_b + p.hs_u * p.hs_u + q.hs_u * q.hs_u + p.hs_b * p.hs_b +
                q.hs_b * q.hs_b);
  }
  return trapezoid_until(times, f, t);
}

namespace {

// Least C >= 0 with lhs <= (d0 + C h) exp(C a).
double solve_strong(double lhs, double d0, double h, double a) {
  auto bound = [&](double c) { return (d0 + c * h) * std::exp(c * a); };
  if (lhs <= bound(0.0) * (1.0 + kSlack)) return 0.0;
  if (h <= 0.0 && a <= 0.0) return kInf;
  double hi = 1.0;
  while (bound(hi) < lhs) {
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bound(mid) < lhs ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

std::pair<InequalityReport, InequalityReport> verify_difference_bounds(const solver::Trajectory& first,
                                                                       const solver::Trajectory& second,
                                                                       const DifferenceSeries& diff,
                                                                       double threshold_weak,
                                                                       double threshold_strong) {
  require_common_times(first, second);
  if (diff.size() != first.rows.size()) {
    throw std::invalid_argument("verify_difference_bounds: difference series not sampled at row times");
  }
  for (std::size_t i = 0; i < diff.size(); ++i) {
    if (std::abs(diff.t[i] - first.rows[i].t) > 1e-12 * std::max(1.0, std::abs(diff.t[i]))) {
      throw std::invalid_argument("verify_difference_bounds: difference series times differ from row times");
    }
  }
  const bool partial = !first.completed || !second.completed;
  const auto a = a_functional_series(first, second);

  InequalityReport weak;
  weak.name = "difference_bound_weak";
  weak.form = BoundForm::gronwall;
  weak.threshold = threshold_weak;
  weak.partial = partial;
  weak.times = diff.t;
  std::vector<double> weak_sq;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    weak_sq.push_back(diff.hsm1_du[i] * diff.hsm1_du[i] + diff.hsm1_db[i] * diff.hsm1_db[i]);
  }
  weak.lhs = weak_sq;
  const double d0w = weak_sq.front();
  weak.fitted_constant = fit_exponential(weak.lhs, d0w, a);
  {
    const double c = std::isfinite(weak.fitted_constant) ? weak.fitted_constant : 0.0;
    for (double ai : a) weak.rhs.push_back(d0w * std::exp(c * ai));
  }
  weak.values["data"] = d0w;
  weak.values["s_minus_1"] = diff.s - 1.0;
  weak.series["a_functional"] = a;
  weak.judge();

  InequalityReport strong;
  strong.name = "difference_bound_strong";
  strong.form = BoundForm::gronwall;
  strong.threshold = threshold_strong;
  strong.partial = partial;
  strong.times = diff.t;
  std::vector<double> hist;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    strong.lhs.push_back(diff.hs_du[i] * diff.hs_du[i] + diff.hs_db[i] * diff.hs_db[i]);
    const auto& r = second.rows[i];
    hist.push_back((r.hs_plus1_u * r.hs_plus1_u + r.hs_plus1_b * r.hs_plus1_b) * weak_sq[i]);
  }
  const auto h = cumulative_trapezoid(diff.t, hist);
  const double d0s = strong.lhs.front();
  double c = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) c = std::max(c, solve_strong(strong.lhs[i], d0s, h[i], a[i]));
  strong.fitted_constant = c;
  const double cf = std::isfinite(c) ? c : 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) strong.rhs.push_back((d0s + cf * h[i]) * std::exp(cf * a[i]));
  strong.values["data"] = d0s;
  strong.values["s"] = diff.s;
  strong.series["a_functional"] = a;
  strong.series["history_integral"] = h;
  strong.judge();

  return {std::move(weak), std::move(strong)};
}

InequalityReport uniform_bound_check(std::span<const solver::Trajectory> family, double threshold) {
  if (family.empty()) throw std::invalid_argument("uniform_bound_check: empty family");
  InequalityReport rep;
  rep.name = "uniform_bound";
  rep.form = BoundForm::linear;
  rep.threshold = threshold;
  std::vector<double> ratio;
  double c = 0.0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    const auto& tr = family[m];
    if (tr.rows.empty()) throw std::invalid_argument("uniform_bound_check: empty member trajectory");
    rep.partial = rep.partial || !tr.completed;
    double sup = 0.0;
    for (const auto& r : tr.rows) sup = std::max(sup, r.hs_u * r.hs_u + r.hs_b * r.hs_b);
    const auto& r0 = tr.rows.front();
    const double data = r0.hs_u * r0.hs_u + r0.hs_b * r0.hs_b;
    rep.times.push_back(static_cast<double>(m));
    rep.lhs.push_back(sup);
    rep.rhs.push_back(data);
    const double q = data > 0.0 ? sup / data : (sup > 0.0 ? kInf : 0.0);
    ratio.push_back(q);
    c = std::max(c, q);
  }
  rep.fitted_constant = c;
  rep.series["member_ratio"] = ratio;
  rep.values["members"] = static_cast<double>(family.size());
  rep.metadata["times_axis"] = "member index";
  rep.judge();
  return rep;
}

}  // namespace hallmhd::analysis
