#include "hallmhd/solver/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hallmhd/errors.hpp"
#include "hallmhd/lp/sobolev.hpp"
#include "hallmhd/spectral/operators.hpp"
#include "hallmhd/spectral/random.hpp"

namespace hallmhd::solver {

using spectral::Complex;
using spectral::PhysicalField;

namespace {

constexpr Complex kI{0.0, 1.0};

double rms(const Field& f) {
  const auto w = f.grid().weight();
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const auto d = f.component(c);
    for (std::size_t i = 0; i < d.size(); ++i) sum += w[i] * std::norm(d[i]);
  }
  return std::sqrt(sum);
}

Field finalize(Field f) { return spectral::leray_project(spectral::dealias(f)); }

template <typename Fn>
Field sample_vector(const GridPtr& grid, Fn fn) {
  PhysicalField p(grid, 3);
  const auto shape = grid->physical_shape();
  const double h = grid->spacing();
  const std::size_t m = grid->physical_size();
  std::size_t idx = 0;
  for (int i = 0; i < shape[0]; ++i) {
    for (int j = 0; j < shape[1]; ++j) {
      for (int l = 0; l < shape[2]; ++l, ++idx) {
        const auto v = fn(i * h, j * h, l * h);
        for (int c = 0; c < 3; ++c) p.values[c * m + idx] = v[c];
      }
    }
  }
  return finalize(spectral::transform_to_spectral(p));
}

std::array<double, 3> normalized(std::array<double, 3> v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

MhdState single_mode(const InitialDataSpec& spec, const GridPtr& grid) {
  const auto k = spec.mode;
  if (k == spectral::Wavevector{0, 0, 0}) throw ConfigError("single_mode: mode must be nonzero");
  if (!grid->locate(k)) throw ConfigError("single_mode: mode not representable on the grid");
  const std::array<double, 3> kv{double(k[0]), double(k[1]), double(k[2])};
  std::array<double, 3> eu = cross3({0.0, 0.0, 1.0}, kv);
  if (eu[0] == 0.0 && eu[1] == 0.0 && eu[2] == 0.0) eu = {1.0, 0.0, 0.0};
  eu = normalized(eu);
  const auto eb = normalized(cross3(kv, eu));
  MhdState s{Field::vector(grid), Field::vector(grid), 0.0};
  // sin(k.x) has coefficient -i/2 at k.
  for (int c = 0; c < 3; ++c) {
    if (eu[c] != 0.0) s.u.set_coeff(c, k, -0.5 * kI * spec.amplitude_u * eu[c]);
    if (eb[c] != 0.0) s.b.set_coeff(c, k, -0.5 * kI * spec.amplitude_b * eb[c]);
  }
  s.u = finalize(s.u);
  s.b = finalize(s.b);
  return s;
}

MhdState taylor_green(const InitialDataSpec& spec, const GridPtr& grid) {
  const double a = spec.amplitude_u;
  const double bamp = spec.amplitude_b;
  const bool three = grid->dim() == 3;
  MhdState s;
  s.u = sample_vector(grid, [&](double x, double y, double z) {
    const double cz = three ? std::cos(z) : 1.0;
    return std::array<double, 3>{a * std::sin(x) * std::cos(y) * cz, -a * std::cos(x) * std::sin(y) * cz, 0.0};
  });
  s.b = sample_vector(grid, [&](double x, double y, double) {
    return std::array<double, 3>{bamp * std::cos(y), bamp * std::cos(x), bamp * std::sin(x) * std::sin(y)};
  });
  return s;
}

MhdState orszag_tang_like(const InitialDataSpec& spec, const GridPtr& grid) {
  const double a = spec.amplitude_u;
  const double bamp = spec.amplitude_b;
  MhdState s;
  s.u = sample_vector(grid, [&](double x, double y, double) {
    return std::array<double, 3>{-a * std::sin(y), a * std::sin(x), 0.0};
  });
  s.b = sample_vector(grid, [&](double x, double y, double) {
    return std::array<double, 3>{-bamp * std::sin(y), bamp * std::sin(2.0 * x), 0.5 * bamp * std::cos(x + y)};
  });
  return s;
}

Field scaled_to_rms(Field f, double amplitude) {
  const double r = rms(f);
  if (r == 0.0) return f;
  f *= amplitude / r;
  return f;
}

MhdState random_band(const InitialDataSpec& spec, const GridPtr& grid) {
  MhdState s;
  s.u = scaled_to_rms(spectral::random_field(grid, 3, 2 * spec.seed, spec.spectrum, true), spec.amplitude_u);
  s.b = scaled_to_rms(spectral::random_field(grid, 3, 2 * spec.seed + 1, spec.spectrum, true), spec.amplitude_b);
  return s;
}

void require_finite(const MhdState& s) {
  double total = 0.0;
  for (const Field* f : {&s.u, &s.b}) {
    for (const auto& c : f->data()) total += std::abs(c.real()) + std::abs(c.imag());
  }
  if (!std::isfinite(total) || total > 1e100) throw InstabilityError(s.t, "non-finite or overflowing coefficients");
}

// Physical samples plus gradients of both fields, reused by every product.
struct PhysicalState {
  PhysicalField u, b;
  std::array<PhysicalField, 3> du, db;  // du[a] = d_a u (3 components)
};

PhysicalState to_physical(const Field& u, const Field& b) {
  const auto& g = u.grid();
  PhysicalState p{spectral::transform_to_physical(u), spectral::transform_to_physical(b), {}, {}};
  for (int a = 0; a < 3; ++a) {
    p.du[a] = PhysicalField(u.grid_ptr(), 3);
    p.db[a] = PhysicalField(u.grid_ptr(), 3);
  }
  Field scratch = Field::scalar(u.grid_ptr());
  for (int a = 0; a < g.dim(); ++a) {
    const auto k = g.dk(a);
    for (int c = 0; c < 3; ++c) {
      for (auto [src, dst] : {std::pair{&u, &p.du[a]}, std::pair{&b, &p.db[a]}}) {
        const auto s = src->component(c);
        auto d = scratch.component(0);
        for (std::size_t i = 0; i < s.size(); ++i) d[i] = kI * k[i] * s[i];
        g.inverse(d, dst->component(c));
      }
    }
  }
  return p;
}

std::vector<double> fractional_symbol(const spectral::Grid& g, double alpha) {
  std::vector<double> sym(g.spectral_size());
  const auto k2 = g.k2();
  for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], alpha);
  return sym;
}

}  // namespace

MhdState initial_data(const InitialDataSpec& spec, const GridPtr& grid) {
  switch (spec.recipe) {
    case Recipe::single_mode: return single_mode(spec, grid);
    case Recipe::taylor_green: return taylor_green(spec, grid);
    case Recipe::orszag_tang_like: return orszag_tang_like(spec, grid);
    case Recipe::random_band: return random_band(spec, grid);
  }
  throw ConfigError("unknown initial-data recipe");
}

Tendency rhs(const MhdState& state) {
  const Field u = spectral::dealias(state.u);
  const Field b = spectral::dealias(state.b);
  const auto& g = u.grid();
  const std::size_t m = g.physical_size();
  const auto p = to_physical(u, b);

  PhysicalField nu(u.grid_ptr(), 3), nb(u.grid_ptr(), 3), e(u.grid_ptr(), 3);
  for (std::size_t i = 0; i < m; ++i) {
    const double ux = p.u.values[i], uy = p.u.values[m + i], uz = p.u.values[2 * m + i];
    const double bx = p.b.values[i], by = p.b.values[m + i], bz = p.b.values[2 * m + i];
    const double uv[3] = {ux, uy, uz};
    const double bv[3] = {bx, by, bz};
    for (int c = 0; c < 3; ++c) {
      double u_grad_u = 0.0, b_grad_b = 0.0, u_grad_b = 0.0, b_grad_u = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double dua = p.du[a].values[c * m + i];
        const double dba = p.db[a].values[c * m + i];
        u_grad_u += uv[a] * dua;
        b_grad_b += bv[a] * dba;
        u_grad_b += uv[a] * dba;
        b_grad_u += bv[a] * dua;
      }
      nu.values[c * m + i] = b_grad_b - u_grad_u;
      nb.values[c * m + i] = b_grad_u - u_grad_b;
    }
    // J = curl b from the gradient samples: db[a] holds d_a b.
    const double jx = p.db[1].values[2 * m + i] - p.db[2].values[m + i];
    const double jy = p.db[2].values[i] - p.db[0].values[2 * m + i];
    const double jz = p.db[0].values[m + i] - p.db[1].values[i];
    e.values[i] = jy * bz - jz * by;
    e.values[m + i] = jz * bx - jx * bz;
    e.values[2 * m + i] = jx * by - jy * bx;
  }

  Tendency t;
  t.du = spectral::leray_project(spectral::dealias(spectral::transform_to_spectral(nu)));
  t.db = spectral::dealias(spectral::transform_to_spectral(nb));
  t.db -= spectral::curl(spectral::dealias(spectral::transform_to_spectral(e)));
  return t;
}

MhdState step(const MhdState& s0, double h, double alpha) {
  const auto& g = s0.b.grid();
  const auto sym = fractional_symbol(g, alpha);
  std::vector<double> e1(sym.size()), e2(sym.size());
  for (std::size_t i = 0; i < sym.size(); ++i) {
    e1[i] = std::exp(-sym[i] * h);
    e2[i] = std::exp(-0.5 * sym[i] * h);
  }
  // out = fac * x (per mode)
  auto scale = [](const Field& x, const std::vector<double>& fac) {
    Field out = x;
    for (int c = 0; c < out.components(); ++c) {
      auto d = out.component(c);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] *= fac[i];
    }
    return out;
  };

  const Tendency k1 = rhs(s0);

  MhdState sa{s0.u, s0.b, s0.t + 0.5 * h};
  sa.u.axpy(0.5 * h, k1.du);
  sa.b.axpy(0.5 * h, k1.db);
  sa.b = scale(sa.b, e2);
  const Tendency k2 = rhs(sa);

  MhdState sb{s0.u, scale(s0.b, e2), s0.t + 0.5 * h};
  sb.u.axpy(0.5 * h, k2.du);
  sb.b.axpy(0.5 * h, k2.db);
  const Tendency k3 = rhs(sb);

  MhdState sc{s0.u, scale(s0.b, e1), s0.t + h};
  sc.u.axpy(h, k3.du);
  sc.b.axpy(h, scale(k3.db, e2));
  const Tendency k4 = rhs(sc);

  MhdState out{s0.u, scale(s0.b, e1), s0.t + h};
  out.u.axpy(h / 6.0, k1.du).axpy(h / 3.0, k2.du).axpy(h / 3.0, k3.du).axpy(h / 6.0, k4.du);
  Field mid = k2.db;
  mid += k3.db;
  out.b.axpy(h / 6.0, scale(k1.db, e1)).axpy(h / 3.0, scale(mid, e2)).axpy(h / 6.0, k4.db);

  out.u = finalize(out.u);
  out.b = finalize(out.b);
  require_finite(out);
  return out;
}

double compute_dt(const MhdState& state, const SimConfig& config) {
  const auto& g = state.u.grid();
  const double h = g.spacing();
  const double umax = spectral::linf_norm(state.u);
  const double bmax = spectral::linf_norm(state.b);
  const double kmax = g.kmax();
  double bound = std::numeric_limits<double>::infinity();
  if (umax > 0.0) bound = std::min(bound, h / umax);
  if (bmax > 0.0) bound = std::min(bound, std::min(h / bmax, 1.0 / (bmax * kmax * kmax)));
  return std::min(config.dt_max, config.cfl_safety * bound);
}

double relative_divergence(const Field& v) {
  const double r = rms(v);
  return r == 0.0 ? 0.0 : spectral::max_divergence(v) / r;
}

Diagnostics diagnose(const MhdState& state, double alpha, double s) {
  Diagnostics d;
  d.t = state.t;
  const double eu = spectral::inner(state.u, state.u);
  const double eb = spectral::inner(state.b, state.b);
  d.energy = 0.5 * (eu + eb);
  d.dissipation = spectral::inner(spectral::fractional_laplacian(state.b, alpha), state.b);
  d.hs_u = lp::sobolev_norm(state.u, s);
  d.hs_b = lp::sobolev_norm(state.b, s);
  d.hs_minus1_u = lp::sobolev_norm(state.u, s - 1.0);
  d.hs_minus1_b = lp::sobolev_norm(state.b, s - 1.0);
  d.hs_plus1_u = lp::sobolev_norm(state.u, s + 1.0);
  d.hs_plus1_b = lp::sobolev_norm(state.b, s + 1.0);
  d.lip_u = spectral::lipschitz_norm(state.u);
  d.lip_b = spectral::lipschitz_norm(state.b);
  d.div_u = relative_divergence(state.u);
  d.div_b = relative_divergence(state.b);
  return d;
}

Trajectory simulate(const SimConfig& config) {
  config.validate();
  const auto grid = spectral::Grid::make(config.dim, config.n);
  return simulate(config, initial_data(config.initial, grid));
}

Trajectory simulate(const SimConfig& config, MhdState initial, const Observer& observer) {
  std::vector<MhdState> members;
  members.push_back(std::move(initial));
  EnsembleObserver wrapped;
  if (observer) {
    wrapped = [&observer](std::span<const MhdState> states, std::span<const Diagnostics> rows,
                          const std::vector<bool>&) { observer(states[0], rows[0]); };
  }
  auto out = simulate_ensemble(config, std::move(members), wrapped);
  return std::move(out.front());
}

std::vector<Trajectory> simulate_ensemble(const SimConfig& config, std::vector<MhdState> states,
                                          const EnsembleObserver& observer) {
  config.validate();
  if (states.empty()) throw std::invalid_argument("simulate_ensemble: no members");
  const auto& grid = states.front().u.grid();
  if (grid.dim() != config.dim || grid.n() != config.n) {
    throw ConfigError("initial state grid does not match the configured dim/n");
  }
  const std::size_t count = states.size();
  std::vector<Trajectory> out(count);
  std::vector<bool> alive(count, true);
  std::vector<Diagnostics> current(count);

  for (std::size_t m = 0; m < count; ++m) {
    states[m].t = 0.0;
    current[m] = diagnose(states[m], config.alpha, config.s);
    out[m].rows.push_back(current[m]);
    out[m].snapshots.push_back(states[m]);
  }
  if (observer) observer(states, current, alive);

  std::size_t fixed_steps = 0;
  double fixed_dt = 0.0;
  if (config.dt) {
    fixed_steps = std::size_t(std::ceil(config.t_end / *config.dt - 1e-9));
    fixed_dt = config.t_end / double(fixed_steps);
  }

  double t = 0.0;
  int step_index = 0;
  auto stored_last = std::vector<bool>(count, true);
  while (t < config.t_end * (1.0 - 1e-14)) {
    double h;
    double t_next;
    if (config.dt) {
      h = fixed_dt;
      t_next = step_index + 1 == int(fixed_steps) ? config.t_end : double(step_index + 1) * fixed_dt;
    } else {
      h = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < count; ++m) {
        if (alive[m]) h = std::min(h, compute_dt(states[m], config));
      }
      h = std::min(h, config.t_end - t);
      t_next = t + h;
      if (t_next >= config.t_end * (1.0 - 1e-14)) t_next = config.t_end;
    }
    ++step_index;
    for (std::size_t m = 0; m < count; ++m) {
      if (!alive[m]) continue;
      try {
        if (!(h > 1e-14)) throw InstabilityError(t, "time step collapsed");
        MhdState next = step(states[m], h, config.alpha);
        next.t = t_next;
        states[m] = std::move(next);
        current[m] = diagnose(states[m], config.alpha, config.s);
        current[m].step = step_index;
        current[m].dt = h;
        out[m].rows.push_back(current[m]);
        const bool keep = config.snapshot_stride > 0 && step_index % config.snapshot_stride == 0;
        if (keep) out[m].snapshots.push_back(states[m]);
        stored_last[m] = keep;
      } catch (const InstabilityError& e) {
        alive[m] = false;
        out[m].abort_time = t;
        out[m].abort_reason = e.what();
      }
    }
    t = t_next;
    if (observer) observer(states, current, alive);
    if (std::none_of(alive.begin(), alive.end(), [](bool a) { return a; })) break;
  }

  for (std::size_t m = 0; m < count; ++m) {
    out[m].completed = alive[m];
    if (!stored_last[m]) out[m].snapshots.push_back(states[m]);
  }
  return out;
}

}  // namespace hallmhd::solver
