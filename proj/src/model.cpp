#include "emhd/model.hpp"

#include <cmath>
#include <numbers>

#include "emhd/errors.hpp"
#include "emhd/spectral_ops.hpp"

namespace emhd {

void ForcingSpec::validate(const TorusGrid& grid) const {
    const int cut = grid.dealias_cutoff();
    for (size_t i = 0; i < modes.size(); ++i) {
        const auto& m = modes[i];
        if (std::abs(m.k1) > cut || std::abs(m.k2) > cut)
            throw ValidationError("forcing mode " + std::to_string(i) + " at k=(" +
                                  std::to_string(m.k1) + "," + std::to_string(m.k2) +
                                  ") lies above the dealias cutoff " + std::to_string(cut));
    }
}

VectorField3 magnetic_field(const StateAB& state) {
    VectorField3 out(state.grid());
    out[0] = derivative(state.a, 0, 1);
    ScalarField b2 = derivative(state.a, 1, 0);
    b2.spectral_mut() *= -1.0;
    out[1] = std::move(b2);
    out[2] = state.b;
    return out;
}

double divergence_sup(const VectorField3& field) {
    const ScalarField div = ScalarField::from_spectral(
        field.grid(),
        (derivative(field[0], 1, 0).spectral() + derivative(field[1], 0, 1).spectral()).eval());
    return div.physical().abs().maxCoeff();
}

std::pair<ScalarField, ScalarField> nonlinear_rhs(const StateAB& state, Variant variant) {
    const TorusGrid& g = state.grid();
    const Eigen::ArrayXXd ax = derivative(state.a, 1, 0).physical();
    const Eigen::ArrayXXd ay = derivative(state.a, 0, 1).physical();
    const Eigen::ArrayXXd bx = derivative(state.b, 1, 0).physical();
    const Eigen::ArrayXXd by = derivative(state.b, 0, 1).physical();

    ScalarField na = ScalarField::from_physical(g, (-(ay * bx - ax * by)).eval());
    dealias_in_place(na);

    ScalarField nb(g);
    if (variant == Variant::emhd1) {
        // J2 as written: a_y (Lap a)_x - a_x (Lap a)_y, the Laplacian taken
        // spectrally before the single outer derivative.
        const ScalarField lap_a = laplacian(state.a);
        const Eigen::ArrayXXd lax = derivative(lap_a, 1, 0).physical();
        const Eigen::ArrayXXd lay = derivative(lap_a, 0, 1).physical();
        nb = ScalarField::from_physical(g, (ay * lax - ax * lay).eval());
        dealias_in_place(nb);
    }
    return {std::move(na), std::move(nb)};
}

VectorField3 hall_term_3d(const VectorField3& field) {
    const TorusGrid& g = field.grid();
    // curl B = (d_y B3, -d_x B3, d_x B2 - d_y B1)
    VectorField3 curl(g);
    curl[0] = derivative(field[2], 0, 1);
    ScalarField c2 = derivative(field[2], 1, 0);
    c2.spectral_mut() *= -1.0;
    curl[1] = std::move(c2);
    curl[2] = ScalarField::from_spectral(
        g, (derivative(field[1], 1, 0).spectral() - derivative(field[0], 0, 1).spectral()).eval());

    // (curl B) x B, pointwise, dealiased
    VectorField3 cross(g);
    {
        const auto &c1 = curl[0].physical(), &c2p = curl[1].physical(), &c3 = curl[2].physical();
        const auto &b1 = field[0].physical(), &b2 = field[1].physical(), &b3 = field[2].physical();
        cross[0] = ScalarField::from_physical(g, (c2p * b3 - c3 * b2).eval());
        cross[1] = ScalarField::from_physical(g, (c3 * b1 - c1 * b3).eval());
        cross[2] = ScalarField::from_physical(g, (c1 * b2 - c2p * b1).eval());
        for (int i = 0; i < 3; ++i) dealias_in_place(cross[i]);
    }

    VectorField3 out(g);
    out[0] = derivative(cross[2], 0, 1);
    ScalarField o2 = derivative(cross[2], 1, 0);
    o2.spectral_mut() *= -1.0;
    out[1] = std::move(o2);
    out[2] = ScalarField::from_spectral(
        g, (derivative(cross[1], 1, 0).spectral() - derivative(cross[0], 0, 1).spectral()).eval());
    return out;
}

std::pair<double, double> energy_and_dissipation(const StateAB& state) {
    const double w = state.grid().cell_area();
    const Eigen::ArrayXXd ax = derivative(state.a, 1, 0).physical();
    const Eigen::ArrayXXd ay = derivative(state.a, 0, 1).physical();
    const auto& b = state.b.physical();
    const double e = 0.5 * w * (ax.square() + ay.square() + b.square()).sum();

    const Eigen::ArrayXXd axx = derivative(state.a, 2, 0).physical();
    const Eigen::ArrayXXd axy = derivative(state.a, 1, 1).physical();
    const Eigen::ArrayXXd ayy = derivative(state.a, 0, 2).physical();
    const Eigen::ArrayXXd bx = derivative(state.b, 1, 0).physical();
    const Eigen::ArrayXXd by = derivative(state.b, 0, 1).physical();
    const double d = w * (axx.square() + 2.0 * axy.square() + ayy.square() + bx.square() +
                          by.square())
                             .sum();
    return {e, d};
}

std::pair<ScalarField, ScalarField> forcing_eval(const ForcingSpec& spec, const TorusGrid& grid,
                                                 double t) {
    const int n = grid.n();
    Eigen::ArrayXd x(n);
    for (int i = 0; i < n; ++i) x(i) = grid.coordinate(i);

    ScalarField fa(grid), fb(grid);
    Eigen::ArrayXXd acc_a = Eigen::ArrayXXd::Zero(n, n);
    Eigen::ArrayXXd acc_b = Eigen::ArrayXXd::Zero(n, n);
    bool any_a = false, any_b = false;
    const double two_pi_over_l = 2.0 * std::numbers::pi / grid.length();

    for (const auto& m : spec.modes) {
        const double modulation = m.omega == 0.0 ? 1.0 : std::sin(m.omega * t);
        const double amp = m.amplitude * modulation;
        if (amp == 0.0) continue;
        auto& acc = m.target == ForcingMode::Target::a ? acc_a : acc_b;
        (m.target == ForcingMode::Target::a ? any_a : any_b) = true;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                acc(i, j) +=
                    amp * std::cos(two_pi_over_l * (m.k1 * x(i) + m.k2 * x(j)) + m.phase);
    }
    if (any_a) fa = ScalarField::from_physical(grid, std::move(acc_a));
    if (any_b) fb = ScalarField::from_physical(grid, std::move(acc_b));
    return {std::move(fa), std::move(fb)};
}

StateAB rescale(const StateAB& state, int m) {
    if (m < 0) throw ValidationError("rescale: m must be a non-negative integer");
    const TorusGrid& g = state.grid();
    if (m == 0) return state;

    const int n = g.n();
    const int cut = g.dealias_cutoff();
    const double lambda = std::ldexp(1.0, m);

    auto remap = [&](const ScalarField& f, double prefactor) {
        Eigen::ArrayXXcd out = Eigen::ArrayXXcd::Zero(n, n);
        const auto& s = f.spectral();
        // Coefficients at transform-roundoff level are not content; only
        // modes above this floor participate (and may be rejected).
        const double floor = 1e-13 * std::sqrt(s.abs2().maxCoeff());
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            for (int i = 0; i < n; ++i) {
                const std::complex<double> c = s(i, j);
                if (std::abs(c) <= floor) continue;
                const int k1 = g.wavenumber(i);
                const long t1 = static_cast<long>(k1) << m;
                const long t2 = static_cast<long>(k2) << m;
                if (std::abs(t1) > cut || std::abs(t2) > cut)
                    throw ValidationError(
                        "rescale: mode k=(" + std::to_string(k1) + "," + std::to_string(k2) +
                        ") maps above the dealias cutoff for m=" + std::to_string(m));
                out(g.index_of(static_cast<int>(t1)), g.index_of(static_cast<int>(t2))) =
                    prefactor * c;
            }
        }
        return ScalarField::from_spectral(g, std::move(out));
    };

    return StateAB(remap(state.a, 1.0 / lambda), remap(state.b, 1.0),
                   state.time * lambda * lambda, state.mu);
}

}  // namespace emhd
