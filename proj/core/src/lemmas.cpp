#include "hallmhd/lp/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hallmhd/lp/commutator.hpp"
#include "hallmhd/lp/sobolev.hpp"
#include "hallmhd/spectral/operators.hpp"

namespace hallmhd::lp {

using spectral::gradient_linf_norm;
using spectral::l2_norm;
using spectral::linf_norm;

std::string_view to_string(CommutatorCase c) {
  switch (c) {
    case CommutatorCase::low: return "low";
    case CommutatorCase::critical: return "critical";
    case CommutatorCase::high: return "high";
    case CommutatorCase::positive: return "positive";
  }
  return "?";
}

CommutatorCase commutator_case_from_string(std::string_view name) {
  if (name == "low") return CommutatorCase::low;
  if (name == "critical") return CommutatorCase::critical;
  if (name == "high") return CommutatorCase::high;
  if (name == "positive") return CommutatorCase::positive;
  throw std::invalid_argument("unknown commutator case '" + std::string(name) + "'");
}

namespace {

double ratio_of(double lhs, double rhs, double roundoff_scale) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs <= 1e-10 * roundoff_scale ? 0.0 : std::numeric_limits<double>::infinity();
}

void check_case(double sigma, CommutatorCase which, int dim) {
  const double critical = 1.0 + 0.5 * dim;
  const auto fail = [&](const char* why) {
    throw std::invalid_argument("case " + std::string(to_string(which)) + " requires " + why + ", got sigma = " +
                                std::to_string(sigma));
  };
  switch (which) {
    case CommutatorCase::low:
      if (!(sigma < critical)) fail("sigma < 1 + d/2");
      if (!(sigma > -0.5 * dim)) fail("sigma > -d/2");
      break;
    case CommutatorCase::critical:
      if (std::abs(sigma - critical) > 1e-12) fail("sigma = 1 + d/2");
      break;
    case CommutatorCase::high:
      if (!(sigma > critical)) fail("sigma > 1 + d/2");
      break;
    case CommutatorCase::positive:
      if (!(sigma > 0.0)) fail("sigma > 0");
      break;
  }
}

InequalityReport finish_sweep(InequalityReport rep, double headroom) {
  const auto& ratios = rep.series["ratio"];
  double max_ratio = 0.0;
  bool finite = true;
  for (double r : ratios) {
    finite = finite && std::isfinite(r);
    max_ratio = std::max(max_ratio, r);
  }
  rep.values["max_ratio"] = max_ratio;
  rep.values["headroom"] = headroom;
  rep.fitted_constant = headroom * max_ratio;
  rep.judge();
  rep.pass = rep.pass && finite;
  return rep;
}

}  // namespace

InequalityReport verify_product_estimate(const Field& f, const Field& g, double s, const Layout& layout) {
  if (f.components() != 1 || g.components() != 1) {
    throw std::invalid_argument("verify_product_estimate: expected scalar fields");
  }
  const double lhs = sobolev_norm(spectral::multiply(f, g), s);
  const double f_inf = linf_norm(f);
  const double g_inf = linf_norm(g);
  const double f_hs = sobolev_norm(f, s);
  const double g_hs = sobolev_norm(g, s);
  const double rhs = f_inf * g_hs + f_hs * g_inf;

  InequalityReport rep;
  rep.name = "product_estimate";
  rep.times = {0.0};
  rep.lhs = {lhs};
  rep.rhs = {rhs};
  rep.fitted_constant = ratio_of(lhs, rhs, 1.0);
  rep.values = {{"s", s}, {"f_linf", f_inf}, {"g_linf", g_inf}, {"f_hs", f_hs}, {"g_hs", g_hs}};
  rep.series["f_blocks"] = layout.block_norms(f);
  rep.series["g_blocks"] = layout.block_norms(g);
  rep.metadata["dim"] = std::to_string(f.grid().dim());
  rep.metadata["n"] = std::to_string(f.grid().n());
  rep.judge();
  return rep;
}

InequalityReport verify_commutator_estimate(const Field& v, const Field& f, double sigma, CommutatorCase which,
                                            const Layout& layout) {
  const int dim = v.grid().dim();
  check_case(sigma, which, dim);

  const auto norms = commutator_advection_norms(v, f, layout);
  double lhs2 = 0.0;
  for (int j = -1; j <= layout.jmax(); ++j) {
    const double t = std::exp2(j * sigma) * norms[j + 1];
    lhs2 += t * t;
  }
  const double lhs = std::sqrt(lhs2);
  const double f_hsigma = sobolev_norm(f, sigma);

  double rhs = 0.0;
  switch (which) {
    case CommutatorCase::low:
      rhs = (gradient_sobolev_norm(v, 0.5 * dim) + gradient_linf_norm(v)) * f_hsigma;
      break;
    case CommutatorCase::critical:
      rhs = gradient_sobolev_norm(v, 0.5 * dim + 1.0) * f_hsigma;
      break;
    case CommutatorCase::high:
      rhs = gradient_sobolev_norm(v, sigma - 1.0) * f_hsigma;
      break;
    case CommutatorCase::positive:
      rhs = gradient_linf_norm(v) * f_hsigma + gradient_linf_norm(f) * gradient_sobolev_norm(v, sigma - 1.0);
      break;
  }
  const double scale = l2_norm(v) * gradient_sobolev_norm(f, sigma) + 1e-300;

  InequalityReport rep;
  rep.name = "commutator_estimate";
  rep.times = {0.0};
  rep.lhs = {lhs};
  rep.rhs = {rhs};
  rep.fitted_constant = ratio_of(lhs, rhs, scale);
  rep.values = {{"sigma", sigma}, {"f_hsigma", f_hsigma}};
  rep.series["commutator_block_norms"] = norms;
  rep.metadata["case"] = std::string(to_string(which));
  rep.metadata["dim"] = std::to_string(dim);
  rep.metadata["n"] = std::to_string(v.grid().n());
  rep.judge();
  return rep;
}

InequalityReport product_sweep(const spectral::GridPtr& grid, double s, const SweepOptions& options) {
  const Layout layout(grid);
  InequalityReport rep;
  rep.name = "product_sweep";
  for (int i = 0; i < options.seeds; ++i) {
    const std::uint64_t seed = options.first_seed + std::uint64_t(i);
    const Field f = spectral::random_field(grid, 1, 2 * seed, options.spectrum);
    const Field g = spectral::random_field(grid, 1, 2 * seed + 1, options.spectrum);
    const auto one = verify_product_estimate(f, g, s, layout);
    rep.times.push_back(double(seed));
    rep.lhs.push_back(one.lhs[0]);
    rep.rhs.push_back(one.rhs[0]);
    rep.series["ratio"].push_back(one.fitted_constant);
  }
  rep.values["s"] = s;
  rep.metadata["dim"] = std::to_string(grid->dim());
  rep.metadata["n"] = std::to_string(grid->n());
  rep.metadata["case"] = "product";
  return finish_sweep(std::move(rep), options.headroom);
}

InequalityReport commutator_sweep(const spectral::GridPtr& grid, double sigma, CommutatorCase which,
                                  const SweepOptions& options) {
  check_case(sigma, which, grid->dim());
  const Layout layout(grid);
  InequalityReport rep;
  rep.name = "commutator_sweep";
  for (int i = 0; i < options.seeds; ++i) {
    const std::uint64_t seed = options.first_seed + std::uint64_t(i);
    const Field v = spectral::random_field(grid, 3, 2 * seed, options.spectrum, true);
    const Field f = spectral::random_field(grid, 1, 2 * seed + 1, options.spectrum);
    const auto one = verify_commutator_estimate(v, f, sigma, which, layout);
    rep.times.push_back(double(seed));
    rep.lhs.push_back(one.lhs[0]);
    rep.rhs.push_back(one.rhs[0]);
    rep.series["ratio"].push_back(one.fitted_constant);
  }
  rep.values["sigma"] = sigma;
  rep.metadata["dim"] = std::to_string(grid->dim());
  rep.metadata["n"] = std::to_string(grid->n());
  rep.metadata["case"] = std::string(to_string(which));
  return finish_sweep(std::move(rep), options.headroom);
}

double representative_sigma(CommutatorCase which, int dim, double s) {
  const double critical = 1.0 + 0.5 * dim;
  switch (which) {
    case CommutatorCase::low: return 1.0;
    case CommutatorCase::critical: return critical;
    case CommutatorCase::high:
    case CommutatorCase::positive:
      if (!(s > critical)) throw std::invalid_argument("representative_sigma: s must exceed 1 + d/2");
      return s;
  }
  return s;
}

}  // namespace hallmhd::lp
