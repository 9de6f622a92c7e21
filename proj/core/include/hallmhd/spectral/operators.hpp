#pragma once

#include "hallmhd/spectral/field.hpp"

namespace hallmhd::spectral {

// Norms and inner products. All L2 quantities are torus integrals, i.e.
// they include the (2pi)^dim volume factor.

double inner(const Field& a, const Field& b);
double l2_norm(const Field& f);
/// Grid maximum of the pointwise Euclidean magnitude.
double linf_norm(const Field& f);
/// max_k |k . f_hat(k)| over all stored modes.
double max_divergence(const Field& v);
/// Grid maximum of the pointwise Frobenius norm of the gradient.
double gradient_linf_norm(const Field& f);
/// Lipschitz norm ||f||_{L^inf} + ||grad f||_{L^inf} from grid maxima of
/// pointwise magnitudes (Frobenius norm for the gradient of a vector field).
/// oversample > 1 evaluates on a zero-padded grid refined by that factor.
double lipschitz_norm(const Field& f, int oversample = 1);

// Linear multipliers.

Field derivative(const Field& f, int axis);
/// Gradient of a scalar field as a 3-component field (z part zero in 2D).
Field gradient(const Field& f);
Field divergence(const Field& v);
Field curl(const Field& v);
/// Multiplies c_k by |k|^{2 alpha}; the k = 0 mode maps to zero.
/// Throws std::invalid_argument for negative alpha.
Field fractional_laplacian(const Field& f, double alpha);
/// Orthogonal projection onto divergence-free fields.
Field leray_project(const Field& v);
/// Zeros every mode with some |k_i| > n/3.
Field dealias(const Field& f);
/// Copies the coefficients onto another grid of the same dimension,
/// zero-padding or truncating (truncation drops the new Nyquist planes).
Field resample(const Field& f, const GridPtr& target);

// Quadratic terms. Inputs are dealiased, multiplied pointwise in physical
// space and the result is dealiased again, which makes each product the
// exact Galerkin projection of the continuous product.

/// Pointwise product of two scalar fields.
Field multiply(const Field& f, const Field& g);
/// (v . grad) f for a vector field v and a scalar or vector field f.
Field advect(const Field& v, const Field& f);
Field cross(const Field& a, const Field& b);
/// curl((curl b) x b).
Field hall_term(const Field& b);

/// Pressure from the divergence of the momentum equation:
/// P_hat(k) = i k . N_hat(k) / |k|^2 with N = u.grad u - b.grad b, zero mean.
Field recover_pressure(const MhdState& state);

}  // namespace hallmhd::spectral
