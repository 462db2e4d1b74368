#pragma once

#include <utility>
#include <vector>

#include "emhd/field.hpp"

namespace emhd {

enum class Variant { emhd1, emhd2 };

/// The evolved pair (a, b): a the magnetic potential of the horizontal
/// field, b the vertical component, with B = (a_y, -a_x, b).
struct StateAB {
    ScalarField a;
    ScalarField b;
    double time = 0.0;
    double mu = 0.1;

    StateAB(const TorusGrid& grid, double mu_) : a(grid), b(grid), mu(mu_) {}
    StateAB(ScalarField a_, ScalarField b_, double time_, double mu_)
        : a(std::move(a_)), b(std::move(b_)), time(time_), mu(mu_) {
        if (!(a.grid() == b.grid()))
            throw ValidationError("StateAB: a and b must share one grid");
    }

    const TorusGrid& grid() const { return a.grid(); }
};

/// One forcing mode, synthesized in potential form: it adds
/// amplitude * cos(2 pi k.x / L + phase) * (sin(omega t) if omega != 0
/// else 1) to the right-hand side of the a- or b-equation.
struct ForcingMode {
    enum class Target { a, b };
    Target target = Target::b;
    int k1 = 0;
    int k2 = 0;
    double amplitude = 0.0;
    double phase = 0.0;
    double omega = 0.0;  // 0 means steady
};

struct ForcingSpec {
    std::vector<ForcingMode> modes;

    bool empty() const { return modes.empty(); }
    /// Rejects modes at or above the dealias cutoff.
    void validate(const TorusGrid& grid) const;
};

/// B = (a_y, -a_x, b); divergence-free in the horizontal pair by
/// construction.
VectorField3 magnetic_field(const StateAB& state);

/// Max |d_x B1 + d_y B2| over the grid (identically round-off level).
double divergence_sup(const VectorField3& field);

/// Right-hand-side nonlinearities (products dealiased):
///   N_a = -(a_y b_x - a_x b_y)
///   N_b = +(a_y (Lap a)_x - a_x (Lap a)_y)   (emhd1)   or 0 (emhd2).
std::pair<ScalarField, ScalarField> nonlinear_rhs(const StateAB& state, Variant variant);

/// The Hall term curl((curl B) x B) for a z-independent 3-component field,
/// evaluated pseudo-spectrally with dealiasing.
VectorField3 hall_term_3d(const VectorField3& field);

/// E = (1/2) int (a_x^2 + a_y^2 + b^2),
/// D = int (a_xx^2 + 2 a_xy^2 + a_yy^2 + b_x^2 + b_y^2),
/// both by the uniform-grid quadrature rule.
std::pair<double, double> energy_and_dissipation(const StateAB& state);

/// Potential-form forcing evaluated at time t: (f_a, f_b).
std::pair<ScalarField, ScalarField> forcing_eval(const ForcingSpec& spec, const TorusGrid& grid,
                                                 double t);

/// Dyadic rescaling a_lambda = lambda^{-1} a(lambda x, lambda^2 t),
/// b_lambda = b(lambda x, lambda^2 t) with lambda = 2^m: spectral
/// reindexing k -> 2^m k on the same grid. Rejects when any nonzero mode
/// would leave the dealiased lattice.
StateAB rescale(const StateAB& state, int m);

}  // namespace emhd
