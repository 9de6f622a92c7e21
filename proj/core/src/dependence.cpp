#include "hallmhd/analysis/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hallmhd/analysis/quadrature.hpp"
#include "hallmhd/errors.hpp"
#include "hallmhd/lp/layout.hpp"
#include "hallmhd/lp/sobolev.hpp"
#include "hallmhd/solver/solver.hpp"

namespace hallmhd::analysis {

using spectral::Field;
using spectral::MhdState;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double hs_sq(const Field& f, double s) {
  const double v = lp::sobolev_norm(f, s);
  return v * v;
}

void validate(const DependenceOptions& o, const lp::Layout& layout) {
  if (o.eps.empty()) throw ConfigError("eps list must not be empty");
  if (o.j_list.empty()) throw ConfigError("j list must not be empty");
  for (std::size_t i = 0; i < o.eps.size(); ++i) {
    if (!(o.eps[i] >= 0.0) || !std::isfinite(o.eps[i])) throw ConfigError("eps values must be finite and >= 0");
    if (i > 0 && !(o.eps[i] < o.eps[i - 1])) throw ConfigError("eps list must be strictly decreasing");
  }
  for (int j : o.j_list) {
    if (j < 0 || j > layout.jmax()) {
      throw ConfigError("j = " + std::to_string(j) + " outside [0, " + std::to_string(layout.jmax()) + "]");
    }
  }
  if (!(o.headroom >= 1.0)) throw ConfigError("headroom must be >= 1");
}

}  // namespace

MhdState perturbation_direction(const PerturbationSpec& spec, const spectral::GridPtr& grid, double s) {
  MhdState w;
  w.u = spectral::random_field(grid, 3, 2 * spec.seed, spec.spectrum, true);
  w.b = spectral::random_field(grid, 3, 2 * spec.seed + 1, spec.spectrum, true);
  const double norm = std::sqrt(hs_sq(w.u, s) + hs_sq(w.b, s));
  if (!(norm > 0.0)) throw ConfigError("perturbation spectrum has no modes on this grid");
  w.u *= 1.0 / norm;
  w.b *= 1.0 / norm;
  return w;
}

DependenceReport continuous_dependence_experiment(const solver::SimConfig& base, const DependenceOptions& options) {
  base.validate();
  const auto grid = spectral::Grid::make(base.dim, base.n);
  const lp::Layout layout(grid);
  validate(options, layout);
  const double s = base.s;
  const std::size_t ne = options.eps.size();
  const std::size_t nj = options.j_list.size();

  const MhdState u0 = solver::initial_data(base.initial, grid);
  const MhdState w = perturbation_direction(options.perturbation, grid, s);

  // member layout: 0 base | 1..ne perturbed | ne+1..ne+nj mollified base |
  // then mollified perturbed, eps-major
  auto perturbed_idx = [&](std::size_t e) { return 1 + e; };
  auto mollified_idx = [&](std::size_t q) { return 1 + ne + q; };
  auto mollified_perturbed_idx = [&](std::size_t e, std::size_t q) { return 1 + ne + nj + e * nj + q; };

  std::vector<MhdState> members(1 + ne + nj + ne * nj);
  members[0] = u0;
  for (std::size_t e = 0; e < ne; ++e) {
    MhdState p = u0;
    p.u.axpy(options.eps[e], w.u);
    p.b.axpy(options.eps[e], w.b);
    members[perturbed_idx(e)] = std::move(p);
  }
  for (std::size_t q = 0; q < nj; ++q) {
    const int j = options.j_list[q];
    members[mollified_idx(q)] = MhdState{layout.lowpass(u0.u, j), layout.lowpass(u0.b, j), 0.0};
    for (std::size_t e = 0; e < ne; ++e) {
      const MhdState& p = members[perturbed_idx(e)];
      members[mollified_perturbed_idx(e, q)] = MhdState{layout.lowpass(p.u, j), layout.lowpass(p.b, j), 0.0};
    }
  }

  DependenceReport rep;
  rep.eps_list = options.eps;
  rep.headroom = options.headroom;
  rep.t_end = base.t_end;
  rep.members = static_cast<int>(members.size());
  rep.rows.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    rep.rows[e].eps = options.eps[e];
    rep.rows[e].cells.resize(nj);
    for (std::size_t q = 0; q < nj; ++q) rep.rows[e].cells[q].j = options.j_list[q];
  }
  std::vector<double> sup_hs_plus1(nj, 0.0);

  const auto track = [&](std::span<const MhdState> st, std::span<const solver::Diagnostics> rows,
                         const std::vector<bool>&) {
    const MhdState& b0 = st[0];
    for (std::size_t e = 0; e < ne; ++e) {
      auto& row = rep.rows[e];
      const MhdState& pe = st[perturbed_idx(e)];
      const Field du = pe.u - b0.u;
      const Field db = pe.b - b0.b;
      const double hu = lp::sobolev_norm(du, s);
      const double hb = lp::sobolev_norm(db, s);
      row.sup_error_hs = std::max(row.sup_error_hs, hu + hb);
      row.sup_error_hs_sq = std::max(row.sup_error_hs_sq, hu * hu + hb * hb);
      row.sup_error_hsm1 =
          std::max(row.sup_error_hsm1, lp::sobolev_norm(du, s - 1.0) + lp::sobolev_norm(db, s - 1.0));
      for (std::size_t q = 0; q < nj; ++q) {
        auto& cell = row.cells[q];
        const MhdState& mj = st[mollified_idx(q)];
        const MhdState& mpj = st[mollified_perturbed_idx(e, q)];
        cell.mollified_pair = std::max(cell.mollified_pair, hs_sq(mpj.u - mj.u, s) + hs_sq(mpj.b - mj.b, s));
        cell.perturbed_tail = std::max(cell.perturbed_tail, hs_sq(mpj.u - pe.u, s) + hs_sq(mpj.b - pe.b, s));
        cell.base_tail = std::max(cell.base_tail, hs_sq(mj.u - b0.u, s) + hs_sq(mj.b - b0.b, s));
      }
    }
    for (std::size_t q = 0; q < nj; ++q) {
      const auto& r = rows[mollified_idx(q)];
      sup_hs_plus1[q] = std::max(sup_hs_plus1[q], r.hs_plus1_u * r.hs_plus1_u + r.hs_plus1_b * r.hs_plus1_b);
    }
  };

  const auto trajectories = solver::simulate_ensemble(base, members, track);
  if (trajectories.front().rows.size() > 1) rep.dt = trajectories.front().rows[1].dt;

  // flags
  auto failed = [&](std::size_t m) { return !trajectories[m].completed; };
  for (std::size_t e = 0; e < ne; ++e) {
    auto& row = rep.rows[e];
    std::vector<std::size_t> involved{0, perturbed_idx(e)};
    for (std::size_t q = 0; q < nj; ++q) {
      involved.push_back(mollified_idx(q));
      involved.push_back(mollified_perturbed_idx(e, q));
    }
    for (std::size_t m : involved) {
      if (failed(m)) {
        row.flagged = true;
        row.flag_reason = "member " + std::to_string(m) + " aborted: " + trajectories[m].abort_reason;
        break;
      }
    }
  }

  // mollification table
  for (std::size_t q = 0; q < nj; ++q) {
    const int j = options.j_list[q];
    MollificationRow m;
    m.j = j;
    m.tail_u = lp::sobolev_norm(layout.highpass(u0.u, j), s);
    m.tail_b = lp::sobolev_norm(layout.highpass(u0.b, j), s);
    m.data_hs_plus1_sq = hs_sq(members[mollified_idx(q)].u, s + 1.0) + hs_sq(members[mollified_idx(q)].b, s + 1.0);
    m.sup_hs_plus1_sq = sup_hs_plus1[q];
    rep.mollification.push_back(m);
  }

  // bounds and fitted constant
  double c = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    auto& row = rep.rows[e];
    const double data_gap = options.eps[e] * options.eps[e];  // ||eps w||_{H^s}^2
    for (std::size_t q = 0; q < nj; ++q) {
      auto& cell = row.cells[q];
      const auto& m = rep.mollification[q];
      cell.bound = m.tail_u * m.tail_u + m.tail_b * m.tail_b + std::ldexp(1.0, 2 * cell.j) * data_gap;
      const double pieces = cell.mollified_pair + cell.perturbed_tail + cell.base_tail;
      cell.ratio = cell.bound > 0.0 ? pieces / cell.bound : (pieces > 0.0 ? kInf : 0.0);
      if (!row.flagged) c = std::max(c, cell.ratio);
    }
    const auto best = std::min_element(row.cells.begin(), row.cells.end(),
                                       [](const auto& a, const auto& b) { return a.bound < b.bound; });
    row.best_j = best->j;
    row.best_bound = best->bound;
  }
  rep.fitted_constant = options.headroom * c;

  bool pass = std::isfinite(rep.fitted_constant);
  for (std::size_t e = 0; e < ne; ++e) {
    auto& row = rep.rows[e];
    const double cap = 3.0 * rep.fitted_constant * row.best_bound;
    row.domination = cap > 0.0 ? row.sup_error_hs_sq / cap : (row.sup_error_hs_sq > 0.0 ? kInf : 0.0);
    row.dominated = !row.flagged && row.sup_error_hs_sq <= cap * (1.0 + 1e-12);
    pass = pass && row.dominated;
    rep.sup_errors_hs.push_back(row.sup_error_hs);
    rep.sup_errors_hsm1.push_back(row.sup_error_hsm1);
    if (e > 0 && !(row.sup_error_hs < rep.rows[e - 1].sup_error_hs)) pass = false;
  }
  for (std::size_t q = 1; q < nj; ++q) {
    const auto& a = rep.mollification[q - 1];
    const auto& b = rep.mollification[q];
    if (b.j > a.j && b.tail_u > a.tail_u) pass = false;
  }
  rep.rate_hs = loglog_slope(rep.eps_list, rep.sup_errors_hs);
  rep.rate_hsm1 = loglog_slope(rep.eps_list, rep.sup_errors_hsm1);

  auto& reg = rep.regularity;
  reg.name = "regularity_persistence";
  reg.form = BoundForm::linear;
  std::vector<double> over_4j;
  double creg = 0.0;
  for (const auto& m : rep.mollification) {
    reg.times.push_back(m.j);
    reg.lhs.push_back(m.sup_hs_plus1_sq);
    reg.rhs.push_back(m.data_hs_plus1_sq);
    over_4j.push_back(m.data_hs_plus1_sq / std::ldexp(1.0, 2 * m.j));
    const double q = m.data_hs_plus1_sq > 0.0 ? m.sup_hs_plus1_sq / m.data_hs_plus1_sq
                                              : (m.sup_hs_plus1_sq > 0.0 ? kInf : 0.0);
    creg = std::max(creg, q);
  }
  reg.fitted_constant = creg;
  reg.series["data_over_4j"] = over_4j;
  reg.metadata["times_axis"] = "j";
  for (std::size_t q = 0; q < nj; ++q) reg.partial = reg.partial || failed(mollified_idx(q));
  reg.judge();
  pass = pass && reg.pass;

  rep.pass = pass;
  rep.metadata["perturbation_seed"] = std::to_string(options.perturbation.seed);
  rep.metadata["initial_seed"] = std::to_string(base.initial.seed);
  rep.metadata["recipe"] = std::string(solver::to_string(base.initial.recipe));
  return rep;
}

}  // namespace hallmhd::analysis
