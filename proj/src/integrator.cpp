#include "emhd/integrator.hpp"

#include <cmath>
#include <numbers>

#include "emhd/errors.hpp"
#include "emhd/spectral_ops.hpp"

namespace emhd {

void StepPolicy::validate() const {
    if (!(dt_min < dt_max)) throw ValidationError("StepPolicy: requires dt_min < dt_max");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ValidationError("StepPolicy: C_cfl must be in (0, 1]");
    if (mode == Mode::fixed && !(dt > 0.0))
        throw ValidationError("StepPolicy: fixed mode needs dt > 0");
}

namespace {

Eigen::ArrayXXd heat_factor(const TorusGrid& g, double mu, double delta) {
    const int n = g.n();
    Eigen::ArrayXXd out(n, n);
    for (int j = 0; j < n; ++j) {
        const double ky = g.physical_wavenumber(g.wavenumber(j));
        for (int i = 0; i < n; ++i) {
            const double kx = g.physical_wavenumber(g.wavenumber(i));
            out(i, j) = std::exp(-mu * (kx * kx + ky * ky) * delta);
        }
    }
    return out;
}

struct RhsEval {
    Eigen::ArrayXXcd a;
    Eigen::ArrayXXcd b;
};

RhsEval eval_rhs(const TorusGrid& g, const Eigen::ArrayXXcd& ah, const Eigen::ArrayXXcd& bh,
                 double mu, double t, Variant variant, const ForcingSpec& forcing) {
    StateAB s(ScalarField::from_spectral(g, ah), ScalarField::from_spectral(g, bh), t, mu);
    auto [na, nb] = nonlinear_rhs(s, variant);
    RhsEval out{na.spectral(), nb.spectral()};
    if (!forcing.empty()) {
        auto [fa, fb] = forcing_eval(forcing, g, t);
        ScalarField fa_d = dealias(fa), fb_d = dealias(fb);
        out.a += fa_d.spectral();
        out.b += fb_d.spectral();
    }
    return out;
}

}  // namespace

StateAB step(const StateAB& state, double dt, Variant variant, const ForcingSpec& forcing) {
    if (!(dt > 0.0)) throw ValidationError("step: dt must be positive");
    const TorusGrid& g = state.grid();
    const double mu = state.mu;
    const double t = state.time;

    const Eigen::ArrayXXd e_full = heat_factor(g, mu, dt);
    const Eigen::ArrayXXd e_half = heat_factor(g, mu, 0.5 * dt);

    const Eigen::ArrayXXcd& ah = state.a.spectral();
    const Eigen::ArrayXXcd& bh = state.b.spectral();

    Eigen::ArrayXXcd anew, bnew;
    try {
        const RhsEval k1 = eval_rhs(g, ah, bh, mu, t, variant, forcing);
        const RhsEval k2 = eval_rhs(g, (e_half * (ah + 0.5 * dt * k1.a)).eval(),
                                    (e_half * (bh + 0.5 * dt * k1.b)).eval(), mu, t + 0.5 * dt,
                                    variant, forcing);
        const RhsEval k3 = eval_rhs(g, (e_half * ah + 0.5 * dt * k2.a).eval(),
                                    (e_half * bh + 0.5 * dt * k2.b).eval(), mu, t + 0.5 * dt,
                                    variant, forcing);
        const RhsEval k4 = eval_rhs(g, (e_full * ah + dt * (e_half * k3.a)).eval(),
                                    (e_full * bh + dt * (e_half * k3.b)).eval(), mu, t + dt,
                                    variant, forcing);

        anew = e_full * ah + (dt / 6.0) * (e_full * k1.a + 2.0 * e_half * (k2.a + k3.a) + k4.a);
        bnew = e_full * bh + (dt / 6.0) * (e_full * k1.b + 2.0 * e_half * (k2.b + k3.b) + k4.b);
    } catch (const NonFiniteFieldError&) {
        // overflow inside a stage evaluation: the state was finite going in,
        // so this is loss of regularity / step-size instability
        throw BlowUpError(t + dt, "integration aborted: non-finite fields while evaluating "
                                  "stages at t = " +
                                      std::to_string(t) + " (blow-up)");
    }

    StateAB out(ScalarField::from_spectral(g, std::move(anew)),
                ScalarField::from_spectral(g, std::move(bnew)), t + dt, mu);
    dealias_in_place(out.a);
    dealias_in_place(out.b);

    const auto finite = [](const Eigen::ArrayXXcd& c) {
        return c.real().isFinite().all() && c.imag().isFinite().all();
    };
    if (!finite(out.a.spectral()) || !finite(out.b.spectral()))
        throw BlowUpError(out.time, "integration aborted: non-finite fields at t = " +
                                        std::to_string(out.time) +
                                        " (loss of regularity or step-size instability)");
    return out;
}

double suggest_dt(const StateAB& state, const StepPolicy& policy) {
    const TorusGrid& g = state.grid();
    const Eigen::ArrayXXd ax = derivative(state.a, 1, 0).physical();
    const Eigen::ArrayXXd ay = derivative(state.a, 0, 1).physical();
    const double grad_a_sup = (ax.square() + ay.square()).sqrt().maxCoeff();
    const double b_sup = state.b.physical().abs().maxCoeff();

    const double kappa_max =
        2.0 * std::numbers::pi * static_cast<double>(g.dealias_cutoff()) / g.length();
    const double dt =
        std::min(policy.dt_max,
                 policy.cfl / ((grad_a_sup + b_sup + 1e-30) * kappa_max * kappa_max));
    if (dt < policy.dt_min)
        throw BlowUpError(state.time,
                          "integration aborted: suggested step " + std::to_string(dt) +
                              " fell below dt_min at t = " + std::to_string(state.time) +
                              " (near-singular gradient growth)");
    return dt;
}

StateAB integrate(StateAB state, double t_end, Variant variant, const ForcingSpec& forcing,
                  const StepPolicy& policy, const std::vector<StepObserver*>& observers) {
    policy.validate();
    forcing.validate(state.grid());
    if (!(t_end >= state.time))
        throw ValidationError("integrate: t_end must not precede the state time");

    dealias_in_place(state.a);
    dealias_in_place(state.b);
    for (auto* ob : observers) ob->on_start(state);

    const double horizon = t_end - state.time;
    std::size_t step_index = 0;
    while (state.time < t_end) {
        double dt = policy.mode == StepPolicy::Mode::fixed ? policy.dt
                                                           : suggest_dt(state, policy);
        const double remaining = t_end - state.time;
        if (dt >= remaining || remaining - dt < 1e-12 * horizon) dt = remaining;
        state = step(state, dt, variant, forcing);
        ++step_index;
        for (auto* ob : observers) ob->on_step(state, step_index);
    }
    return state;
}

}  // namespace emhd
