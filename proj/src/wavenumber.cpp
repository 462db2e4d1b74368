#include "emhd/wavenumber.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "emhd/errors.hpp"
#include "emhd/spectral_ops.hpp"

namespace emhd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double magnitude_lr(const std::vector<const ScalarField*>& comps, double r, double weight) {
    // L^r quadrature norm of the pointwise Euclidean magnitude.
    Eigen::ArrayXXd mag2;
    bool first = true;
    for (const auto* c : comps) {
        if (first) {
            mag2 = c->physical().square();
            first = false;
        } else {
            mag2 += c->physical().square();
        }
    }
    if (std::isinf(r)) return std::sqrt(mag2.maxCoeff());
    if (r == 2.0) return std::sqrt(weight * mag2.sum());
    return std::pow(weight * mag2.sqrt().pow(r).sum(), 1.0 / r);
}

/// Shared scan: given per-shell quantities and (optional) low-pass sup
/// norms, find the minimal q with "tail < threshold for all p > q" and
/// (when present) "lowpass_inf(q) < threshold".
WavenumberReport assemble_report(WavenumberReport::Kind kind, const DyadicFilterBank& bank,
                                 const std::vector<double>& quantity,
                                 const std::vector<double>* lowpass_inf, double r, double c_r,
                                 double mu, int n_dim) {
    WavenumberReport rep;
    rep.kind = kind;
    rep.r = r;
    rep.c_r = c_r;
    rep.mu = mu;
    rep.n_dim = n_dim;
    const double threshold = c_r * mu;
    const int count = bank.shell_count();

    std::vector<bool> tail_pass(static_cast<size_t>(count));
    bool tail_ok = true;  // condition over p > q, built from the top down
    for (int q = bank.q_max(); q >= -1; --q) {
        tail_pass[static_cast<size_t>(q + 1)] = tail_ok;
        tail_ok = tail_ok && quantity[static_cast<size_t>(q + 1)] < threshold;
    }

    rep.q_index = kShellInf;
    for (int q = -1; q <= bank.q_max(); ++q) {
        const size_t idx = static_cast<size_t>(q + 1);
        WavenumberReport::Row row;
        row.q = q;
        row.shell_quantity = quantity[idx];
        row.lowpass_inf = lowpass_inf ? (*lowpass_inf)[idx] : kNaN;
        row.tail_pass = tail_pass[idx];
        row.inf_pass = lowpass_inf ? (*lowpass_inf)[idx] < threshold : true;
        rep.rows.push_back(row);
        if (rep.q_index == kShellInf && row.tail_pass && row.inf_pass) rep.q_index = q;
    }
    rep.lambda_q = rep.finite() ? bank.lambda(rep.q_index)
                                : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace

WavenumberReport dissipation_wavenumber_B(const StateAB& state, double r, double c_r,
                                          const DyadicFilterBank& bank, int n_dim) {
    if (!(r > n_dim && r < 2 * n_dim))
        std::cerr << "[emhd] warning: dissipation_wavenumber_B called with r = " << r
                  << " outside the synchronization-valid range (" << n_dim << ", " << 2 * n_dim
                  << ")\n";

    const VectorField3 field = magnetic_field(state);
    const double weight = state.grid().cell_area();
    const double nr = static_cast<double>(n_dim) / r;

    std::vector<double> quantity, low_inf;
    for (int q = -1; q <= bank.q_max(); ++q) {
        ScalarField p0 = lp_project(field[0], q, bank);
        ScalarField p1 = lp_project(field[1], q, bank);
        ScalarField p2 = lp_project(field[2], q, bank);
        quantity.push_back(std::pow(bank.lambda(q), nr) *
                           magnitude_lr({&p0, &p1, &p2}, r, weight));
        ScalarField l0 = lowpass(field[0], q, bank);
        ScalarField l1 = lowpass(field[1], q, bank);
        ScalarField l2 = lowpass(field[2], q, bank);
        low_inf.push_back(
            magnitude_lr({&l0, &l1, &l2}, std::numeric_limits<double>::infinity(), weight));
    }
    return assemble_report(WavenumberReport::Kind::B, bank, quantity, &low_inf, r, c_r,
                           state.mu, n_dim);
}

namespace {

WavenumberReport tail_only_report(WavenumberReport::Kind kind, const StateAB& state, double r,
                                  double c_r, const DyadicFilterBank& bank) {
    if (!(r >= 2.0) || std::isinf(r))
        throw ValidationError("wavenumber_a/b: r must lie in [2, inf)");
    const double weight = state.grid().cell_area();
    std::vector<double> quantity;
    for (int q = -1; q <= bank.q_max(); ++q) {
        double lr = 0.0;
        if (kind == WavenumberReport::Kind::a) {
            const ScalarField aq = lp_project(state.a, q, bank);
            ScalarField gx = derivative(aq, 0, 1);   // curl(a e_z) = (a_y, -a_x)
            ScalarField gy = derivative(aq, 1, 0);
            lr = magnitude_lr({&gx, &gy}, r, weight);
        } else {
            const ScalarField bq = lp_project(state.b, q, bank);
            lr = lebesgue_norm(bq, r);
        }
        quantity.push_back(std::pow(bank.lambda(q), 2.0 / r) * lr);
    }
    return assemble_report(kind, bank, quantity, nullptr, r, c_r, state.mu, 2);
}

}  // namespace

WavenumberReport wavenumber_a(const StateAB& state, double r, double c_r,
                              const DyadicFilterBank& bank) {
    return tail_only_report(WavenumberReport::Kind::a, state, r, c_r, bank);
}

WavenumberReport wavenumber_b(const StateAB& state, double r, double c_r,
                              const DyadicFilterBank& bank) {
    return tail_only_report(WavenumberReport::Kind::b, state, r, c_r, bank);
}

MonitorSample lowmode_monitors(const StateAB& state, const DyadicFilterBank& bank, double r,
                               double c_r) {
    const WavenumberReport ra = wavenumber_a(state, r, c_r, bank);
    const WavenumberReport rb = wavenumber_b(state, r, c_r, bank);
    MonitorSample out = lowmode_monitors_pinned(state, bank, ra.q_index, rb.q_index);
    return out;
}

MonitorSample lowmode_monitors_pinned(const StateAB& state, const DyadicFilterBank& bank,
                                      int q_a, int q_b) {
    MonitorSample out;
    out.q_a = q_a;
    out.q_b = q_b;

    const ScalarField b_low = lowpass(state.b, q_b, bank);
    out.f1 = std::max(besov_b1inf_norm(derivative(b_low, 1, 0), bank),
                      besov_b1inf_norm(derivative(b_low, 0, 1), bank));

    const ScalarField a_low = lowpass(state.a, q_a, bank);
    const ScalarField axy = derivative(a_low, 1, 1);
    const double bxy = besov_b1inf_norm(axy, bank);
    out.f2 = std::max({besov_b1inf_norm(derivative(a_low, 2, 0), bank), bxy, bxy,
                       besov_b1inf_norm(derivative(a_low, 0, 2), bank)});
    return out;
}

LpsAccumulator::LpsAccumulator(double r, double s) : r_(r), s_(s) {
    if (!(r > 2.0))
        throw ValidationError("LpsAccumulator: r must lie in (2, inf]");
    if (s_ == 0.0) s_ = std::isinf(r_) ? 2.0 : 2.0 * r_ / (r_ - 2.0);
    const double crit = 2.0 / s_ + (std::isinf(r_) ? 0.0 : 2.0 / r_);
    if (!(s_ > 0.0) || crit > 1.0 + 1e-15)
        throw ValidationError("LpsAccumulator: exponents must satisfy 2/s + 2/r <= 1 (got s = " +
                              std::to_string(s_) + ", r = " + std::to_string(r_) + ")");
}

void LpsAccumulator::add(double t, double lr_norm_of_b) {
    const double val = std::pow(lr_norm_of_b, s_);
    if (has_sample_) integral_ += 0.5 * (t - last_t_) * (last_val_ + val);
    last_t_ = t;
    last_val_ = val;
    has_sample_ = true;
}

}  // namespace emhd
