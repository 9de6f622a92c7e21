#include <fmt/format.h>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hallmhd/errors.hpp"
#include "hallmhd/version.hpp"

namespace {

void add_common(CLI::App* cmd, hallmhd::cli::Common& c, const std::string& default_out, bool config_required) {
  auto* opt = cmd->add_option("-c,--config", c.config, "INI config file, or a run manifest to replay");
  if (config_required) opt->required();
  cmd->add_option("--set", c.sets, "override a config key, e.g. --set initial.seed=3 (repeatable)");
  c.out = default_out;
  cmd->add_option("-o,--out", c.out, "output directory")->capture_default_str();
  cmd->add_flag("-q,--quiet", c.quiet, "suppress the console summary");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hallmhd;
  CLI::App app{"Hall-MHD numerical laboratory"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  cli::Common common;
  std::string snapshot, suite = "all", eps, jlist, report_out;
  int seeds = 50;
  double tolerance = 1e-3;
  std::vector<std::string> inputs;

  auto* sim = app.add_subcommand("simulate", "run one trajectory and write diagnostics, snapshots and a manifest");
  add_common(sim, common, "runs/simulate", true);

  auto* lpa = app.add_subcommand("lp-analyze", "dyadic block norms and Sobolev norms of initial data or a snapshot");
  add_common(lpa, common, "runs/lp-analyze", false);
  lpa->add_option("--snapshot", snapshot, "HMHD1 snapshot to analyze instead of the configured initial data");

  auto* lem = app.add_subcommand("verify-lemmas", "seeded sweeps of the product and commutator estimates");
  add_common(lem, common, "runs/verify-lemmas", false);
  lem->add_option("--suite", suite, "product, commutator or all")
      ->check(CLI::IsMember({"product", "commutator", "all"}))
      ->capture_default_str();
  lem->add_option("--seeds", seeds, "number of seeded inputs")->check(CLI::PositiveNumber)->capture_default_str();

  auto* en = app.add_subcommand("energy-check", "per-shell energy budget audit and a priori bound");
  add_common(en, common, "runs/energy-check", true);
  en->add_option("--tol", tolerance, "largest accepted relative budget residual")->capture_default_str();

  auto* dc = app.add_subcommand("diff-check", "difference-system budget audit and difference bounds");
  add_common(dc, common, "runs/diff-check", true);
  dc->add_option("--tol", tolerance, "largest accepted relative budget residual")->capture_default_str();

  auto* cd = app.add_subcommand("cont-dep", "continuous-dependence experiment over eps and mollification levels");
  add_common(cd, common, "runs/cont-dep", true);
  cd->add_option("--eps", eps, "comma-separated, strictly decreasing perturbation amplitudes");
  cd->add_option("--j", jlist, "comma-separated mollification levels");

  auto* rep = app.add_subcommand("report", "render JSON reports as tables and plot-ready CSV");
  rep->add_option("inputs", inputs, "report files or run directories")->required();
  rep->add_option("-o,--out", report_out, "CSV directory (default: <input dir>/csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitValidation;
  }

  try {
    if (*sim) return cli::simulate(common);
    if (*lpa) return cli::lp_analyze(common, snapshot);
    if (*lem) return cli::verify_lemmas(common, suite, seeds);
    if (*en) return cli::energy_check(common, tolerance);
    if (*dc) return cli::diff_check(common, tolerance);
    if (*cd) return cli::cont_dep(common, eps, jlist);
    if (*rep) return cli::report(inputs, report_out);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const InstabilityError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInstability;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return kExitValidation;
}
