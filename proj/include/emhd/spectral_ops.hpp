#pragma once

#include "emhd/field.hpp"

namespace emhd {

/// Spectral derivative: multiply by (i kappa_1)^m1 (i kappa_2)^m2 with
/// kappa = (2 pi / L) k. Total order m1+m2 <= 4. Nyquist lines are zeroed
/// for odd orders in the corresponding direction (no conjugate partner on
/// the even lattice). Output is real.
ScalarField derivative(const ScalarField& field, int m1, int m2);

/// Laplacian, multiplier -|kappa|^2.
ScalarField laplacian(const ScalarField& field);

/// 2/3-rule: zero every coefficient with max(|k1|,|k2|) > floor(N/3).
ScalarField dealias(const ScalarField& field);
void dealias_in_place(ScalarField& field);

/// True when the field carries no coefficient above the dealias cutoff.
bool is_dealiased(const ScalarField& field, double tol = 0.0);

/// Uniform-grid L^r quadrature norm, ((L^2/N^2) sum |u|^r)^(1/r); for
/// r = infinity the lattice max. Rejects r < 1.
double lebesgue_norm(const ScalarField& field, double r);

/// Spectral-side L^2 norm, (L^2 sum |u_hat|^2)^(1/2).
double parseval_l2(const ScalarField& field);

/// u_hat(0): the mean of the field.
double mean(const ScalarField& field);

/// Pointwise physical product, transformed and dealiased — the arithmetic
/// every quadratic nonlinearity uses.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

}  // namespace emhd
