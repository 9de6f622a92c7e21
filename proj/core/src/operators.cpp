#include "hallmhd/spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hallmhd::spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_vector(const Field& v, const char* what) {
  if (v.components() != 3) throw std::invalid_argument(std::string(what) + ": expected a vector field");
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (a.grid_ptr() != b.grid_ptr()) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// Physical samples of the dealiased input.
PhysicalField physical_dealiased(const Field& f) { return transform_to_physical(dealias(f)); }

Field spectral_dealiased(const PhysicalField& p) { return dealias(transform_to_spectral(p)); }

}  // namespace

double inner(const Field& a, const Field& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("inner: shape mismatch");
  const auto w = a.grid().weight();
  double sum = 0.0;
  for (int c = 0; c < a.components(); ++c) {
    const auto ac = a.component(c);
    const auto bc = b.component(c);
    for (std::size_t i = 0; i < ac.size(); ++i) {
      sum += w[i] * (ac[i].real() * bc[i].real() + ac[i].imag() * bc[i].imag());
    }
  }
  return sum * a.grid().volume();
}

double l2_norm(const Field& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

double linf_norm(const Field& f) {
  const auto p = transform_to_physical(f);
  const std::size_t m = f.grid().physical_size();
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (int c = 0; c < p.components; ++c) s += p.values[c * m + i] * p.values[c * m + i];
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double max_divergence(const Field& v) {
  require_vector(v, "max_divergence");
  const auto& g = v.grid();
  double best = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    Complex d{};
    for (int a = 0; a < g.dim(); ++a) d += g.dk(a)[i] * v.component(a)[i];
    best = std::max(best, std::abs(d));
  }
  return best;
}

double gradient_linf_norm(const Field& f) {
  const auto& g = f.grid();
  const std::size_t m = g.physical_size();
  std::vector<double> grad2(m, 0.0);
  std::vector<double> tmp(m);
  Field scratch = Field::scalar(f.grid_ptr());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    for (int a = 0; a < g.dim(); ++a) {
      auto dst = scratch.component(0);
      const auto k = g.dk(a);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * k[i] * src[i];
      g.inverse(dst, tmp);
      for (std::size_t i = 0; i < m; ++i) grad2[i] += tmp[i] * tmp[i];
    }
  }
  return std::sqrt(*std::max_element(grad2.begin(), grad2.end()));
}

double lipschitz_norm(const Field& f, int oversample) {
  if (oversample < 1) throw std::invalid_argument("lipschitz_norm: oversample must be >= 1");
  if (oversample == 1) return linf_norm(f) + gradient_linf_norm(f);
  const Field g = resample(f, Grid::make(f.grid().dim(), f.grid().n() * oversample));
  return linf_norm(g) + gradient_linf_norm(g);
}

Field derivative(const Field& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis out of range");
  Field out(f.grid_ptr(), f.components());
  if (axis >= f.grid().dim()) return out;
  const auto k = f.grid().dk(axis);
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * k[i] * src[i];
  }
  return out;
}

Field gradient(const Field& f) {
  if (f.components() != 1) throw std::invalid_argument("gradient: expected a scalar field");
  Field out = Field::vector(f.grid_ptr());
  for (int a = 0; a < f.grid().dim(); ++a) {
    const auto k = f.grid().dk(a);
    const auto src = f.component(0);
    auto dst = out.component(a);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * k[i] * src[i];
  }
  return out;
}

Field divergence(const Field& v) {
  require_vector(v, "divergence");
  Field out = Field::scalar(v.grid_ptr());
  auto dst = out.component(0);
  for (int a = 0; a < v.grid().dim(); ++a) {
    const auto k = v.grid().dk(a);
    const auto src = v.component(a);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += kI * k[i] * src[i];
  }
  return out;
}

Field curl(const Field& v) {
  require_vector(v, "curl");
  const auto& g = v.grid();
  Field out = Field::vector(v.grid_ptr());
  const auto kx = g.dk(0);
  const auto ky = g.dk(1);
  const auto kz = g.dk(2);
  const auto vx = v.component(0);
  const auto vy = v.component(1);
  const auto vz = v.component(2);
  auto ox = out.component(0);
  auto oy = out.component(1);
  auto oz = out.component(2);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    ox[i] = kI * (ky[i] * vz[i] - kz[i] * vy[i]);
    oy[i] = kI * (kz[i] * vx[i] - kx[i] * vz[i]);
    oz[i] = kI * (kx[i] * vy[i] - ky[i] * vx[i]);
  }
  return out;
}

Field fractional_laplacian(const Field& f, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("fractional_laplacian: alpha must be non-negative");
  Field out(f.grid_ptr(), f.components());
  const auto k2 = f.grid().k2();
  std::vector<double> symbol(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) symbol[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], alpha);
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = symbol[i] * src[i];
  }
  return out;
}

Field leray_project(const Field& v) {
  require_vector(v, "leray_project");
  const auto& g = v.grid();
  Field out = v;
  const int dim = g.dim();
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    double kk = 0.0;
    Complex kv{};
    for (int a = 0; a < dim; ++a) {
      kk += g.dk(a)[i] * g.dk(a)[i];
      kv += g.dk(a)[i] * v.component(a)[i];
    }
    if (kk == 0.0) continue;
    const Complex s = kv / kk;
    for (int a = 0; a < dim; ++a) out.component(a)[i] -= g.dk(a)[i] * s;
  }
  return out;
}

Field dealias(const Field& f) {
  Field out = f;
  const auto keep = f.grid().dealias_mask();
  for (int c = 0; c < f.components(); ++c) {
    auto d = out.component(c);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!keep[i]) d[i] = Complex{};
    }
  }
  return out;
}

Field resample(const Field& f, const GridPtr& target) {
  const auto& src = f.grid();
  if (target->dim() != src.dim()) throw std::invalid_argument("resample: dimension mismatch");
  Field out(target, f.components());
  const int src_nyq = src.n() / 2;
  const int dst_nyq = target->n() / 2;
  for (std::size_t i = 0; i < src.spectral_size(); ++i) {
    const Wavevector k = src.wavevector(i);
    bool ok = true;
    for (int a = 0; a < src.dim(); ++a) {
      ok = ok && std::abs(k[a]) < src_nyq && std::abs(k[a]) < dst_nyq;
    }
    if (!ok) continue;
    const auto loc = target->locate(k);
    if (!loc) continue;
    for (int c = 0; c < f.components(); ++c) {
      const Complex v = f.component(c)[i];
      out.component(c)[loc->first] = loc->second ? std::conj(v) : v;
    }
  }
  return out;
}

Field multiply(const Field& f, const Field& g) {
  if (f.components() != 1 || g.components() != 1) throw std::invalid_argument("multiply: expected scalar fields");
  require_same_grid(f, g, "multiply");
  auto pf = physical_dealiased(f);
  const auto pg = physical_dealiased(g);
  for (std::size_t i = 0; i < pf.values.size(); ++i) pf.values[i] *= pg.values[i];
  return spectral_dealiased(pf);
}

Field advect(const Field& v, const Field& f) {
  require_vector(v, "advect");
  require_same_grid(v, f, "advect");
  const auto& g = v.grid();
  const int dim = g.dim();
  const std::size_t m = g.physical_size();
  const auto pv = physical_dealiased(v);
  const Field fd = dealias(f);
  PhysicalField result(f.grid_ptr(), f.components());
  std::vector<double> tmp(m);
  Field scratch = Field::scalar(f.grid_ptr());
  for (int c = 0; c < f.components(); ++c) {
    auto out = result.component(c);
    for (int a = 0; a < dim; ++a) {
      const auto src = fd.component(c);
      auto dst = scratch.component(0);
      const auto k = g.dk(a);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = kI * k[i] * src[i];
      g.inverse(dst, tmp);
      const auto va = pv.component(a);
      for (std::size_t i = 0; i < m; ++i) out[i] += va[i] * tmp[i];
    }
  }
  return spectral_dealiased(result);
}

Field cross(const Field& a, const Field& b) {
  require_vector(a, "cross");
  require_vector(b, "cross");
  require_same_grid(a, b, "cross");
  const auto pa = physical_dealiased(a);
  const auto pb = physical_dealiased(b);
  PhysicalField r(a.grid_ptr(), 3);
  const std::size_t m = a.grid().physical_size();
  for (std::size_t i = 0; i < m; ++i) {
    const double ax = pa.values[i], ay = pa.values[m + i], az = pa.values[2 * m + i];
    const double bx = pb.values[i], by = pb.values[m + i], bz = pb.values[2 * m + i];
    r.values[i] = ay * bz - az * by;
    r.values[m + i] = az * bx - ax * bz;
    r.values[2 * m + i] = ax * by - ay * bx;
  }
  return spectral_dealiased(r);
}

Field hall_term(const Field& b) { return curl(cross(curl(b), b)); }

Field recover_pressure(const MhdState& state) {
  const Field n = advect(state.u, state.u) - advect(state.b, state.b);
  const auto& g = n.grid();
  Field p = Field::scalar(n.grid_ptr());
  auto dst = p.component(0);
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    double kk = 0.0;
    Complex kn{};
    for (int a = 0; a < g.dim(); ++a) {
      kk += g.dk(a)[i] * g.dk(a)[i];
      kn += g.dk(a)[i] * n.component(a)[i];
    }
    dst[i] = kk == 0.0 ? Complex{} : kI * kn / kk;
  }
  return p;
}

}  // namespace hallmhd::spectral
