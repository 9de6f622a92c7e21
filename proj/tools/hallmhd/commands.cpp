#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>

#include "hallmhd/analysis/budget.hpp"
#include "hallmhd/analysis/dependence.hpp"
#include "hallmhd/analysis/gronwall.hpp"
#include "hallmhd/analysis/lp_analysis.hpp"
#include "hallmhd/errors.hpp"
#include "hallmhd/io/config_file.hpp"
#include "hallmhd/io/files.hpp"
#include "hallmhd/io/report_io.hpp"
#include "hallmhd/lp/lemmas.hpp"
#include "run_writer.hpp"

namespace hallmhd::cli {

namespace fs = std::filesystem;

namespace {

io::ExperimentConfig load(const Common& c, std::vector<io::Override> extra = {}) {
  std::vector<io::Override> overrides;
  for (const auto& s : c.sets) overrides.push_back(io::parse_override(s));
  for (auto& o : extra) overrides.push_back(std::move(o));
  if (c.config.empty()) {
    return io::parse_config("", overrides, "<defaults>");
  }
  return io::load_config(c.config, overrides);
}

io::SnapshotPrecision precision(const io::ExperimentConfig& cfg) {
  return cfg.snapshot_double ? io::SnapshotPrecision::complex128 : io::SnapshotPrecision::complex64;
}

void say(const Common& c, const std::string& line) {
  if (!c.quiet) fmt::print("{}\n", line);
}

void require_fixed_dt(const io::ExperimentConfig& cfg, const char* command) {
  if (!cfg.sim.dt) {
    throw ConfigError(fmt::format("{} needs a fixed dt (budget audits use uniform time samples)", command));
  }
}

std::vector<io::ShellAudit> audit_shells(const char* kind, const std::vector<int>& shells, const lp::Layout& layout,
                                         const auto& terms_for) {
  std::vector<io::ShellAudit> out;
  for (int j : shells) {
    if (j < lp::Layout::jmin() || j > layout.jmax()) {
      throw ConfigError(fmt::format("shell {} outside [-1, {}]", j, layout.jmax()));
    }
    io::ShellAudit a;
    a.kind = kind;
    a.j = j;
    a.rows = terms_for(j);
    a.audit = analysis::audit_budget(a.rows);
    out.push_back(std::move(a));
  }
  return out;
}

bool audits_pass(const std::vector<io::ShellAudit>& audits, double tolerance) {
  return std::all_of(audits.begin(), audits.end(),
                     [&](const auto& a) { return a.audit.relative_residual <= tolerance; });
}

}  // namespace

int simulate(const Common& c) {
  const auto cfg = load(c);
  RunWriter w(c.out, "simulate");
  const auto tr = solver::simulate(cfg.sim);
  w.text("diagnostics.csv", io::diagnostics_csv(tr));
  w.text("trajectory.json", io::trajectory_summary_json(tr));
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    w.snapshot(fmt::format("snapshots/snap_{:04d}.hmhd", i), tr.snapshots[i], cfg.sim.alpha, cfg.sim.s,
               precision(cfg));
  }
  const std::string canonical = io::canonical_config(cfg);
  w.text("config.ini", canonical);
  const int code = tr.completed ? kExitSuccess : kExitInstability;
  w.finish(canonical, code);
  if (tr.completed) {
    say(c, fmt::format("completed {} steps to t = {}; energy {} -> {}", tr.rows.size() - 1, tr.rows.back().t,
                       tr.rows.front().energy, tr.rows.back().energy));
  } else {
    fmt::print(stderr, "{}\n", tr.abort_reason);
  }
  return code;
}

int lp_analyze(const Common& c, const std::string& snapshot) {
  const auto cfg = load(c);
  spectral::MhdState state;
  double s = cfg.sim.s;
  if (!snapshot.empty()) {
    auto snap = io::read_snapshot(snapshot);
    state = std::move(snap.state);
    s = snap.s;
  } else {
    state = solver::initial_data(cfg.sim.initial, spectral::Grid::make(cfg.sim.dim, cfg.sim.n));
  }
  const lp::Layout layout(state.u.grid_ptr());
  const auto a = analysis::lp_analyze(state, layout, s);
  RunWriter w(c.out, "lp-analyze");
  w.text("lp_analysis.json", io::to_json(a));
  w.text("lp_blocks.csv", io::lp_csv(a));
  const std::string canonical = io::canonical_config(cfg);
  w.finish(canonical, kExitSuccess);
  say(c, io::render_report(io::to_json(a)).text);
  return kExitSuccess;
}

int verify_lemmas(const Common& c, const std::string& suite, int seeds) {
  if (suite != "product" && suite != "commutator" && suite != "all") {
    throw ConfigError("--suite must be product, commutator or all");
  }
  if (seeds < 1) throw ConfigError("--seeds must be positive");
  const auto cfg = load(c);
  const auto grid = spectral::Grid::make(cfg.sim.dim, cfg.sim.n);
  lp::SweepOptions opt;
  opt.seeds = seeds;

  io::Suite out;
  out.name = "lemmas_" + suite;
  if (suite != "commutator") out.reports.push_back(lp::product_sweep(grid, cfg.sim.s, opt));
  if (suite != "product") {
    for (auto which : {lp::CommutatorCase::low, lp::CommutatorCase::critical, lp::CommutatorCase::high,
                       lp::CommutatorCase::positive}) {
      const double sigma = lp::representative_sigma(which, cfg.sim.dim, cfg.sim.s);
      out.reports.push_back(lp::commutator_sweep(grid, sigma, which, opt));
    }
  }
  out.pass = std::all_of(out.reports.begin(), out.reports.end(), [](const auto& r) { return r.pass; });
  out.values["seeds"] = seeds;
  out.metadata["n"] = std::to_string(cfg.sim.n);

  RunWriter w(c.out, "verify-lemmas");
  w.text("verify_lemmas.json", io::to_json(out));
  for (const auto& r : out.reports) {
    const std::string tag = r.metadata.count("case") ? r.name + "_" + r.metadata.at("case") : r.name;
    w.text(tag + ".csv", io::to_csv(r));
    say(c, fmt::format("{:<32} max ratio {:.6g}  {}", tag, r.values.at("max_ratio"), r.pass ? "ok" : "FAILED"));
  }
  const int code = out.pass ? kExitSuccess : kExitInequalityFailure;
  w.finish(io::canonical_config(cfg), code);
  return code;
}

int energy_check(const Common& c, double tolerance) {
  auto cfg = load(c);
  require_fixed_dt(cfg, "energy-check");
  cfg.sim.snapshot_stride = 1;
  const auto tr = solver::simulate(cfg.sim);
  const lp::Layout layout(tr.snapshots.front().u.grid_ptr());

  RunWriter w(c.out, "energy-check");
  w.text("diagnostics.csv", io::diagnostics_csv(tr));
  const std::string canonical = io::canonical_config(cfg);
  if (!tr.completed) {
    w.text("trajectory.json", io::trajectory_summary_json(tr));
    w.finish(canonical, kExitInstability);
    fmt::print(stderr, "{}\n", tr.abort_reason);
    return kExitInstability;
  }
  const auto audits = audit_shells("energy", cfg.shells, layout,
                                   [&](int j) { return analysis::energy_terms(tr, layout, j, cfg.sim.alpha); });
  const bool budget_ok = audits_pass(audits, tolerance);
  for (const auto& a : audits) w.text(fmt::format("energy_terms_j{}.csv", a.j), io::shell_audit_csv(a));
  w.text("budget.json", io::to_json(audits, tolerance, budget_ok));

  io::Suite suite;
  suite.name = "energy_check";
  suite.reports.push_back(analysis::verify_apriori_bound(tr));
  suite.values["energy_law_defect"] = analysis::energy_law_defect(tr);
  suite.values["budget_tolerance"] = tolerance;
  suite.pass = budget_ok && suite.reports.front().pass;
  w.text("energy_check.json", io::to_json(suite));
  w.text("apriori_bound.csv", io::to_csv(suite.reports.front()));
  const int code = suite.pass ? kExitSuccess : kExitInequalityFailure;
  w.finish(canonical, code);

  for (const auto& a : audits) {
    say(c, fmt::format("shell {:>2}: relative budget residual {:.3e}", a.j, a.audit.relative_residual));
  }
  say(c, fmt::format("energy law defect {:.3e}; a priori constant {:.6g}", suite.values["energy_law_defect"],
                     suite.reports.front().fitted_constant));
  return code;
}

int diff_check(const Common& c, double tolerance) {
  auto cfg = load(c);
  require_fixed_dt(cfg, "diff-check");
  cfg.sim.snapshot_stride = 1;
  const auto grid = spectral::Grid::make(cfg.sim.dim, cfg.sim.n);
  const auto base = solver::initial_data(cfg.sim.initial, grid);
  const auto w0 = analysis::perturbation_direction(cfg.perturbation, grid, cfg.sim.s);
  auto other = base;
  other.u.axpy(cfg.diff_eps, w0.u);
  other.b.axpy(cfg.diff_eps, w0.b);
  const auto trs = solver::simulate_ensemble(cfg.sim, {other, base});
  const lp::Layout layout(grid);

  RunWriter w(c.out, "diff-check");
  const std::string canonical = io::canonical_config(cfg);
  if (!trs[0].completed || !trs[1].completed) {
    w.finish(canonical, kExitInstability);
    fmt::print(stderr, "{}\n", trs[0].completed ? trs[1].abort_reason : trs[0].abort_reason);
    return kExitInstability;
  }
  const auto audits = audit_shells("difference", cfg.shells, layout, [&](int j) {
    return analysis::difference_terms(trs[0], trs[1], layout, j, cfg.sim.alpha);
  });
  const bool budget_ok = audits_pass(audits, tolerance);
  for (const auto& a : audits) w.text(fmt::format("difference_terms_j{}.csv", a.j), io::shell_audit_csv(a));
  w.text("budget.json", io::to_json(audits, tolerance, budget_ok));

  const auto diff = analysis::difference_series(trs[0], trs[1], cfg.sim.s);
  auto [weak, strong] = analysis::verify_difference_bounds(trs[0], trs[1], diff);
  io::Suite suite;
  suite.name = "diff_check";
  suite.values["eps"] = cfg.diff_eps;
  suite.values["budget_tolerance"] = tolerance;
  suite.pass = budget_ok && weak.pass && strong.pass;
  w.text("difference_bound_weak.csv", io::to_csv(weak));
  w.text("difference_bound_strong.csv", io::to_csv(strong));
  suite.reports = {std::move(weak), std::move(strong)};
  w.text("diff_check.json", io::to_json(suite));
  const int code = suite.pass ? kExitSuccess : kExitInequalityFailure;
  w.finish(canonical, code);

  for (const auto& a : audits) {
    say(c, fmt::format("shell {:>2}: relative budget residual {:.3e}", a.j, a.audit.relative_residual));
  }
  say(c, fmt::format("difference constants: H^(s-1) {:.6g}, H^s {:.6g}", suite.reports[0].fitted_constant,
                     suite.reports[1].fitted_constant));
  return code;
}

int cont_dep(const Common& c, const std::string& eps, const std::string& j) {
  std::vector<io::Override> extra;
  if (!eps.empty()) extra.emplace_back("experiment.eps", eps);
  if (!j.empty()) extra.emplace_back("experiment.j", j);
  const auto cfg = load(c, std::move(extra));
  analysis::DependenceOptions opt;
  opt.eps = cfg.eps;
  opt.j_list = cfg.j_list;
  opt.perturbation = cfg.perturbation;
  opt.headroom = cfg.headroom;
  const auto rep = analysis::continuous_dependence_experiment(cfg.sim, opt);

  RunWriter w(c.out, "cont-dep");
  w.text("dependence.json", io::to_json(rep));
  w.text("dependence.csv", io::dependence_csv(rep));
  w.text("mollification.csv", io::mollification_csv(rep));
  w.text("regularity.csv", io::to_csv(rep.regularity));
  const bool flagged = std::any_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) { return r.flagged; });
  const int code = flagged ? kExitInstability : (rep.pass ? kExitSuccess : kExitInequalityFailure);
  w.finish(io::canonical_config(cfg), code);
  say(c, io::render_report(io::to_json(rep)).text);
  return code;
}

int report(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw ConfigError("no such report: " + in);
    }
  }
  if (files.empty()) throw ConfigError("no JSON reports found");
  for (const auto& f : files) {
    const auto r = io::render_report(io::read_text_file(f));
    fmt::print("== {}\n{}\n", f.string(), r.text);
    const fs::path dir = out.empty() ? f.parent_path() / "csv" : fs::path(out);
    for (const auto& [name, contents] : r.csv) {
      io::write_file_atomic(dir / (f.stem().string() + "." + name), contents);
    }
  }
  return kExitSuccess;
}

}  // namespace hallmhd::cli
