#include "hallmhd/io/report_io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "hallmhd/errors.hpp"
#include "hallmhd/io/files.hpp"
#include "json.hpp"

namespace hallmhd::io {

using nlohmann::json;

namespace {

json real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double real_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a real number, got " + j.dump());
}

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

std::vector<double> reals_from(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(real_from(x));
  return v;
}

const char* form_name(BoundForm f) { return f == BoundForm::linear ? "linear" : "gronwall"; }

json report_json(const InequalityReport& r) {
  json j;
  j["schema"] = kInequalitySchema;
  j["name"] = r.name;
  j["form"] = form_name(r.form);
  j["fitted_constant"] = real(r.fitted_constant);
  j["threshold"] = real(r.threshold);
  j["pass"] = r.pass;
  j["partial"] = r.partial;
  j["times"] = reals(r.times);
  j["lhs"] = reals(r.lhs);
  j["rhs"] = reals(r.rhs);
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = real(v);
  j["values"] = values;
  json series = json::object();
  for (const auto& [k, v] : r.series) series[k] = reals(v);
  j["series"] = series;
  j["metadata"] = r.metadata;
  return j;
}

InequalityReport report_from(const json& j) {
  if (j.value("schema", "") != kInequalitySchema) throw ConfigError("not an inequality report");
  InequalityReport r;
  r.name = j.at("name").get<std::string>();
  const auto form = j.at("form").get<std::string>();
  if (form != "linear" && form != "gronwall") throw ConfigError("unknown bound form '" + form + "'");
  r.form = form == "linear" ? BoundForm::linear : BoundForm::gronwall;
  r.fitted_constant = real_from(j.at("fitted_constant"));
  r.threshold = real_from(j.at("threshold"));
  r.pass = j.at("pass").get<bool>();
  r.partial = j.at("partial").get<bool>();
  r.times = reals_from(j.at("times"));
  r.lhs = reals_from(j.at("lhs"));
  r.rhs = reals_from(j.at("rhs"));
  for (const auto& [k, v] : j.at("values").items()) r.values[k] = real_from(v);
  for (const auto& [k, v] : j.at("series").items()) r.series[k] = reals_from(v);
  r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  if (r.lhs.size() != r.times.size() || r.rhs.size() != r.times.size()) {
    throw ConfigError("inequality report series differ in length");
  }
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

std::string csv_row(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  return out + "\n";
}

}  // namespace

std::string to_json(const InequalityReport& report) { return dump(report_json(report)); }

InequalityReport inequality_report_from_json(std::string_view text) {
  try {
    return report_from(parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed inequality report: ") + e.what());
  }
}

std::string to_json(const analysis::DependenceReport& r) {
  json j;
  j["schema"] = kDependenceSchema;
  j["pass"] = r.pass;
  j["eps_list"] = reals(r.eps_list);
  j["sup_errors_hs"] = reals(r.sup_errors_hs);
  j["sup_errors_hsm1"] = reals(r.sup_errors_hsm1);
  j["rates"] = {{"hs", real(r.rate_hs)}, {"hsm1", real(r.rate_hsm1)}};
  j["fitted_constant"] = real(r.fitted_constant);
  j["headroom"] = real(r.headroom);
  j["t_end"] = real(r.t_end);
  j["dt"] = real(r.dt);
  j["members"] = r.members;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr;
    jr["eps"] = real(row.eps);
    jr["flagged"] = row.flagged;
    jr["flag_reason"] = row.flag_reason;
    jr["sup_error_hs"] = real(row.sup_error_hs);
    jr["sup_error_hsm1"] = real(row.sup_error_hsm1);
    jr["sup_error_hs_sq"] = real(row.sup_error_hs_sq);
    jr["best_j"] = row.best_j;
    jr["best_bound"] = real(row.best_bound);
    jr["domination"] = real(row.domination);
    jr["dominated"] = row.dominated;
    json cells = json::array();
    for (const auto& c : row.cells) {
      cells.push_back({{"j", c.j},
                       {"mollified_pair", real(c.mollified_pair)},
                       {"perturbed_tail", real(c.perturbed_tail)},
                       {"base_tail", real(c.base_tail)},
                       {"bound", real(c.bound)},
                       {"ratio", real(c.ratio)}});
    }
    jr["cells"] = cells;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  json moll = json::array();
  for (const auto& m : r.mollification) {
    moll.push_back({{"j", m.j},
                    {"tail_u", real(m.tail_u)},
                    {"tail_b", real(m.tail_b)},
                    {"data_hs_plus1_sq", real(m.data_hs_plus1_sq)},
                    {"sup_hs_plus1_sq", real(m.sup_hs_plus1_sq)}});
  }
  j["mollification"] = moll;
  j["regularity"] = report_json(r.regularity);
  j["metadata"] = r.metadata;
  return dump(j);
}

std::string to_json(const Suite& suite) {
  json j;
  j["schema"] = kSuiteSchema;
  j["name"] = suite.name;
  j["pass"] = suite.pass;
  json reports = json::array();
  for (const auto& r : suite.reports) reports.push_back(report_json(r));
  j["reports"] = reports;
  json values = json::object();
  for (const auto& [k, v] : suite.values) values[k] = real(v);
  j["values"] = values;
  j["metadata"] = suite.metadata;
  return dump(j);
}

std::string to_json(const std::vector<ShellAudit>& audits, double tolerance, bool pass) {
  json j;
  j["schema"] = kBudgetSchema;
  j["pass"] = pass;
  j["tolerance"] = real(tolerance);
  json shells = json::array();
  for (const auto& a : audits) {
    shells.push_back({{"kind", a.kind},
                      {"j", a.j},
                      {"dt", real(a.audit.dt)},
                      {"max_residual", real(a.audit.max_residual)},
                      {"scale", real(a.audit.scale)},
                      {"relative_residual", real(a.audit.relative_residual)},
                      {"samples", a.rows.size()}});
  }
  j["shells"] = shells;
  return dump(j);
}

std::string trajectory_summary_json(const solver::Trajectory& tr) {
  json j;
  j["schema"] = kTrajectorySchema;
  j["completed"] = tr.completed;
  j["abort_time"] = real(tr.abort_time);
  j["abort_reason"] = tr.abort_reason;
  j["rows"] = tr.rows.size();
  j["snapshots"] = tr.snapshots.size();
  if (!tr.rows.empty()) {
    const auto& f = tr.rows.front();
    const auto& l = tr.rows.back();
    j["t_final"] = real(l.t);
    j["energy_initial"] = real(f.energy);
    j["energy_final"] = real(l.energy);
    double div = 0.0;
    for (const auto& r : tr.rows) div = std::max({div, r.div_u, r.div_b});
    j["max_relative_divergence"] = real(div);
  }
  return dump(j);
}

std::string to_json(const analysis::LpAnalysis& a) {
  json j;
  j["schema"] = kLpSchema;
  j["s"] = real(a.s);
  j["j"] = a.j;
  j["block_u"] = reals(a.block_u);
  j["block_b"] = reals(a.block_b);
  j["hs_weight_u"] = real(a.hs_weight_u);
  j["hs_blocks_u"] = real(a.hs_blocks_u);
  j["hs_weight_b"] = real(a.hs_weight_b);
  j["hs_blocks_b"] = real(a.hs_blocks_b);
  j["partition_defect"] = real(a.partition_defect);
  return dump(j);
}

std::string lp_csv(const analysis::LpAnalysis& a) {
  std::string out = "j,block_u,block_b\n";
  for (std::size_t i = 0; i < a.j.size(); ++i) {
    out += fmt::format("{},{},{}\n", a.j[i], format_real(a.block_u[i]), format_real(a.block_b[i]));
  }
  return out;
}

std::string to_csv(const InequalityReport& r) {
  std::string out = "t,lhs,rhs";
  std::vector<const std::vector<double>*> extra;
  for (const auto& [k, v] : r.series) {
    if (v.size() != r.times.size()) continue;
    out += "," + k;
    extra.push_back(&v);
  }
  out += "\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<double> row{r.times[i], r.lhs[i], r.rhs[i]};
    for (const auto* v : extra) row.push_back((*v)[i]);
    out += csv_row(row);
  }
  return out;
}

std::string dependence_csv(const analysis::DependenceReport& r) {
  std::string out =
      "eps,j,sup_error_hs,sup_error_hsm1,sup_error_hs_sq,mollified_pair,perturbed_tail,base_tail,bound,ratio,best_j,"
      "flagged\n";
  for (const auto& row : r.rows) {
    for (const auto& c : row.cells) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", format_real(row.eps), c.j,
                         format_real(row.sup_error_hs), format_real(row.sup_error_hsm1),
                         format_real(row.sup_error_hs_sq), format_real(c.mollified_pair),
                         format_real(c.perturbed_tail), format_real(c.base_tail), format_real(c.bound),
                         format_real(c.ratio), row.best_j, row.flagged ? 1 : 0);
    }
  }
  return out;
}

std::string mollification_csv(const analysis::DependenceReport& r) {
  std::string out = "j,tail_u,tail_b,data_hs_plus1_sq,sup_hs_plus1_sq\n";
  for (const auto& m : r.mollification) {
    out += fmt::format("{},{},{},{},{}\n", m.j, format_real(m.tail_u), format_real(m.tail_b),
                       format_real(m.data_hs_plus1_sq), format_real(m.sup_hs_plus1_sq));
  }
  return out;
}

std::string diagnostics_csv(const solver::Trajectory& tr) {
  std::string out =
      "step,t,dt,energy,dissipation,hs_u,hs_b,hs_minus1_u,hs_minus1_b,hs_plus1_u,hs_plus1_b,lip_u,lip_b,div_u,div_b\n";
  for (const auto& r : tr.rows) {
    out += fmt::format("{},", r.step);
    out += csv_row({r.t, r.dt, r.energy, r.dissipation, r.hs_u, r.hs_b, r.hs_minus1_u, r.hs_minus1_b, r.hs_plus1_u,
                    r.hs_plus1_b, r.lip_u, r.lip_b, r.div_u, r.div_b});
  }
  return out;
}

std::string shell_audit_csv(const ShellAudit& a) {
  std::string out = "t,shell_energy,dissipation";
  const std::size_t m = a.rows.empty() ? 0 : a.rows.front().terms.size();
  for (std::size_t i = 1; i <= m; ++i) out += fmt::format(",term_{}", i);
  out += ",residual\n";
  std::size_t k = 0;
  for (const auto& row : a.rows) {
    std::vector<double> v{row.t, row.shell_energy, row.dissipation};
    v.insert(v.end(), row.terms.begin(), row.terms.end());
    // residuals exist only on interior samples
    double res = std::numeric_limits<double>::quiet_NaN();
    if (k < a.audit.times.size() && a.audit.times[k] == row.t) res = a.audit.residual[k++];
    v.push_back(res);
    out += csv_row(v);
  }
  return out;
}

namespace {

std::string fmt_real(const json& j) {
  const double v = real_from(j);
  return fmt::format("{:.6g}", v);
}

void render_inequality(const InequalityReport& r, Rendering& out, const std::string& prefix) {
  out.text += fmt::format("{} [{}]  C = {}  threshold = {}  {}{}\n", r.name, form_name(r.form),
                          fmt::format("{:.6g}", r.fitted_constant), fmt::format("{:.6g}", r.threshold),
                          r.pass ? "PASS" : "FAIL", r.partial ? " (partial run)" : "");
  const std::size_t n = r.times.size();
  const std::size_t stride = n > 12 ? (n + 11) / 12 : 1;
  out.text += fmt::format("  {:>14} {:>14} {:>14}\n", "t", "lhs", "rhs");
  for (std::size_t i = 0; i < n; i += stride) {
    out.text += fmt::format("  {:>14.6g} {:>14.6g} {:>14.6g}\n", r.times[i], r.lhs[i], r.rhs[i]);
  }
  if (n > 0 && (n - 1) % stride != 0) {
    out.text += fmt::format("  {:>14.6g} {:>14.6g} {:>14.6g}\n", r.times[n - 1], r.lhs[n - 1], r.rhs[n - 1]);
  }
  out.csv[prefix + r.name + ".csv"] = to_csv(r);
}

}  // namespace

Rendering render_report(std::string_view text) {
  const json j = parse(text);
  const std::string schema = j.is_object() ? j.value("schema", "") : "";
  Rendering out;
  try {
    if (schema == kInequalitySchema) {
      render_inequality(report_from(j), out, "");
    } else if (schema == kSuiteSchema) {
      out.text += fmt::format("suite {}: {}\n", j.at("name").get<std::string>(), j.at("pass").get<bool>() ? "PASS" : "FAIL");
      for (const auto& [k, v] : j.at("values").items()) out.text += fmt::format("  {} = {}\n", k, fmt_real(v));
      for (const auto& r : j.at("reports")) {
        out.text += "\n";
        render_inequality(report_from(r), out, "");
      }
    } else if (schema == kDependenceSchema) {
      out.text += fmt::format("continuous dependence: {}  fitted C = {}  rates: H^s {} H^(s-1) {}\n",
                              j.at("pass").get<bool>() ? "PASS" : "FAIL", fmt_real(j.at("fitted_constant")),
                              fmt_real(j.at("rates").at("hs")), fmt_real(j.at("rates").at("hsm1")));
      out.text += fmt::format("  {:>10} {:>14} {:>14} {:>6} {:>12} {}\n", "eps", "sup err H^s", "sup err H^s-1",
                              "best j", "domination", "flag");
      std::string csv = "eps,sup_error_hs,sup_error_hsm1,best_j,best_bound,domination,flagged\n";
      for (const auto& row : j.at("rows")) {
        out.text += fmt::format("  {:>10} {:>14} {:>14} {:>6} {:>12} {}\n", fmt_real(row.at("eps")),
                                fmt_real(row.at("sup_error_hs")), fmt_real(row.at("sup_error_hsm1")),
                                row.at("best_j").get<int>(), fmt_real(row.at("domination")),
                                row.at("flagged").get<bool>() ? row.at("flag_reason").get<std::string>() : "");
        csv += fmt::format("{},{},{},{},{},{},{}\n", format_real(real_from(row.at("eps"))),
                           format_real(real_from(row.at("sup_error_hs"))),
                           format_real(real_from(row.at("sup_error_hsm1"))), row.at("best_j").get<int>(),
                           format_real(real_from(row.at("best_bound"))),
                           format_real(real_from(row.at("domination"))), row.at("flagged").get<bool>() ? 1 : 0);
      }
      out.csv["dependence_rows.csv"] = csv;
      out.text += fmt::format("  {:>4} {:>14} {:>14}\n", "j", "tail u", "tail b");
      std::string mcsv = "j,tail_u,tail_b\n";
      for (const auto& m : j.at("mollification")) {
        out.text += fmt::format("  {:>4} {:>14} {:>14}\n", m.at("j").get<int>(), fmt_real(m.at("tail_u")),
                                fmt_real(m.at("tail_b")));
        mcsv += fmt::format("{},{},{}\n", m.at("j").get<int>(), format_real(real_from(m.at("tail_u"))),
                            format_real(real_from(m.at("tail_b"))));
      }
      out.csv["dependence_tails.csv"] = mcsv;
      out.text += "\n";
      render_inequality(report_from(j.at("regularity")), out, "");
    } else if (schema == kBudgetSchema) {
      out.text += fmt::format("budget audit: {}  tolerance {}\n", j.at("pass").get<bool>() ? "PASS" : "FAIL",
                              fmt_real(j.at("tolerance")));
      out.text += fmt::format("  {:>10} {:>4} {:>12} {:>14} {:>14}\n", "kind", "j", "dt", "max residual", "relative");
      std::string csv = "kind,j,dt,max_residual,scale,relative_residual\n";
      for (const auto& s : j.at("shells")) {
        out.text += fmt::format("  {:>10} {:>4} {:>12} {:>14} {:>14}\n", s.at("kind").get<std::string>(),
                                s.at("j").get<int>(), fmt_real(s.at("dt")), fmt_real(s.at("max_residual")),
                                fmt_real(s.at("relative_residual")));
        csv += fmt::format("{},{},{},{},{},{}\n", s.at("kind").get<std::string>(), s.at("j").get<int>(),
                           format_real(real_from(s.at("dt"))), format_real(real_from(s.at("max_residual"))),
                           format_real(real_from(s.at("scale"))),
                           format_real(real_from(s.at("relative_residual"))));
      }
      out.csv["budget_summary.csv"] = csv;
    } else if (schema == kTrajectorySchema) {
      out.text += fmt::format("trajectory: {} rows, {} snapshots, {}\n", j.at("rows").get<std::size_t>(),
                              j.at("snapshots").get<std::size_t>(),
                              j.at("completed").get<bool>() ? "completed" : "aborted: " + j.at("abort_reason").get<std::string>());
      for (const char* k : {"t_final", "energy_initial", "energy_final", "max_relative_divergence"}) {
        if (j.contains(k)) out.text += fmt::format("  {} = {}\n", k, fmt_real(j.at(k)));
      }
    } else if (schema == kLpSchema) {
      out.text += fmt::format("dyadic profile (s = {})  partition defect {}\n", fmt_real(j.at("s")),
                              fmt_real(j.at("partition_defect")));
      out.text += fmt::format("  H^s u: weight {} blocks {}   H^s b: weight {} blocks {}\n", fmt_real(j.at("hs_weight_u")),
                              fmt_real(j.at("hs_blocks_u")), fmt_real(j.at("hs_weight_b")), fmt_real(j.at("hs_blocks_b")));
      out.text += fmt::format("  {:>4} {:>14} {:>14}\n", "j", "|D_j u|", "|D_j b|");
      std::string csv = "j,block_u,block_b\n";
      const auto& js = j.at("j");
      const auto bu = reals_from(j.at("block_u"));
      const auto bb = reals_from(j.at("block_b"));
      for (std::size_t i = 0; i < js.size(); ++i) {
        out.text += fmt::format("  {:>4} {:>14.6g} {:>14.6g}\n", js[i].get<int>(), bu.at(i), bb.at(i));
        csv += fmt::format("{},{},{}\n", js[i].get<int>(), format_real(bu.at(i)), format_real(bb.at(i)));
      }
      out.csv["lp_blocks.csv"] = csv;
    } else {
      throw ConfigError("unknown report schema '" + schema + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace hallmhd::io
