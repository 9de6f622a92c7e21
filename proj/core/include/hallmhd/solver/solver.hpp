#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hallmhd/solver/config.hpp"
#include "hallmhd/spectral/field.hpp"

namespace hallmhd::solver {

using spectral::Field;
using spectral::GridPtr;
using spectral::MhdState;

/// Divergence-free, dealiased initial state for the recipe.
/// Throws ConfigError for parameters the recipe cannot honor.
MhdState initial_data(const InitialDataSpec& spec, const GridPtr& grid);

struct Tendency {
  Field du;
  Field db;
};

/// Semi-discrete right-hand side without the fractional diffusion:
///   du = P(-u.grad u + b.grad b)
///   db = -u.grad b + b.grad u - curl((curl b) x b)
/// with every product dealiased and P the Leray projector.
Tendency rhs(const MhdState& state);

/// Classical RK4 on the integrating-factor form: b is advanced in the
/// variable exp(|k|^{2 alpha} t) b_hat so the diffusion is integrated
/// exactly; u and b are re-projected afterwards.
/// Throws InstabilityError on non-finite or overflowing output.
MhdState step(const MhdState& state, double dt, double alpha);

/// cfl_safety * min(h/max|u|, h/max|b|, 1/(max|b| kmax^2)), capped at dt_max.
double compute_dt(const MhdState& state, const SimConfig& config);

/// Scalar diagnostics of one state. Norm exponents follow the config's s.
struct Diagnostics {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  /// (||u||^2 + ||b||^2) / 2
  double energy = 0.0;
  /// ||(-Delta)^{alpha/2} b||^2
  double dissipation = 0.0;
  double hs_u = 0.0, hs_b = 0.0;
  double hs_minus1_u = 0.0, hs_minus1_b = 0.0;
  double hs_plus1_u = 0.0, hs_plus1_b = 0.0;
  double lip_u = 0.0, lip_b = 0.0;
  /// max_k |k . f_hat| / rms(f), zero for vanishing fields.
  double div_u = 0.0, div_b = 0.0;
};

Diagnostics diagnose(const MhdState& state, double alpha, double s);
double relative_divergence(const Field& v);

struct Trajectory {
  /// rows[0] describes the initial state; each accepted step appends one row.
  std::vector<Diagnostics> rows;
  std::vector<MhdState> snapshots;
  bool completed = false;
  double abort_time = 0.0;
  std::string abort_reason;

  std::span<const Diagnostics> step_rows() const { return std::span(rows).subspan(rows.empty() ? 0 : 1); }
};

using Observer = std::function<void(const MhdState&, const Diagnostics&)>;

/// Runs the configured recipe to t_end. An instability ends the run with
/// completed = false instead of throwing.
Trajectory simulate(const SimConfig& config);
Trajectory simulate(const SimConfig& config, MhdState initial, const Observer& observer = {});

/// Called with every member state after each accepted step (and once at
/// t = 0). alive[i] is false once member i has aborted; its state is then
/// frozen at the last good step.
using EnsembleObserver =
    std::function<void(std::span<const MhdState>, std::span<const Diagnostics>, const std::vector<bool>& alive)>;

/// Advances several members in lockstep with a shared step: the fixed dt,
/// or the minimum of the members' CFL steps. Snapshot policy as simulate.
std::vector<Trajectory> simulate_ensemble(const SimConfig& config, std::vector<MhdState> initial,
                                          const EnsembleObserver& observer = {});

}  // namespace hallmhd::solver
