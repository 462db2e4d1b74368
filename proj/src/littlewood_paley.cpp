#include "emhd/littlewood_paley.hpp"

#include <cmath>

#include "emhd/errors.hpp"
#include "emhd/spectral_ops.hpp"

namespace emhd {

double chi(double xi) {
    xi = std::abs(xi);
    if (xi <= 0.75) return 1.0;
    if (xi >= 1.0) return 0.0;
    // Smooth transition psi((1-xi)/(1/4)) with psi(t) = g(t)/(g(t)+g(1-t)),
    // g(t) = exp(-1/t).
    const double t = (1.0 - xi) * 4.0;
    const double g = std::exp(-1.0 / t);
    const double h = std::exp(-1.0 / (1.0 - t));
    return g / (g + h);
}

double phi(double xi) { return chi(0.5 * xi) - chi(xi); }

DyadicFilterBank::DyadicFilterBank(const TorusGrid& grid) : grid_(grid) {
    const int n = grid.n();
    const int cut = grid.dealias_cutoff();
    if (cut < 2)
        throw ValidationError("DyadicFilterBank: grid too small to host the dyadic bands");

    // Retained modes live in the square max(|k1|,|k2|) <= cut, whose corners
    // reach |k| = sqrt(2) cut; choose q_max so the cumulative chi-plateau
    // covers them, making the partition of unity exact there.
    const double corner = std::sqrt(2.0) * cut;
    q_max_ = 0;
    while (0.75 * std::ldexp(1.0, q_max_ + 1) < corner) ++q_max_;

    Eigen::ArrayXXd radius(n, n);
    for (int j = 0; j < n; ++j) {
        const double k2 = grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const double k1 = grid.wavenumber(i);
            radius(i, j) = std::hypot(k1, k2);
        }
    }

    mult_.reserve(static_cast<size_t>(q_max_) + 2);
    cum_.reserve(static_cast<size_t>(q_max_) + 2);
    for (int q = -1; q <= q_max_; ++q) {
        Eigen::ArrayXXd table(n, n);
        const double inv_scale = q < 0 ? 1.0 : std::ldexp(1.0, -q);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double xi = radius(i, j) * inv_scale;
                table(i, j) = q < 0 ? chi(xi) : phi(xi);
            }
        if (cum_.empty())
            cum_.push_back(table);
        else
            cum_.push_back(cum_.back() + table);
        mult_.push_back(std::move(table));
    }
}

double DyadicFilterBank::lambda(int q) const {
    if (q == kShellInf) return std::numeric_limits<double>::infinity();
    return std::ldexp(1.0, q) / grid_.length();
}

const Eigen::ArrayXXd& DyadicFilterBank::multiplier(int q) const {
    if (q < -1 || q > q_max_)
        throw ValidationError("DyadicFilterBank: shell index out of range");
    return mult_[static_cast<size_t>(q + 1)];
}

const Eigen::ArrayXXd& DyadicFilterBank::lowpass_multiplier(int q) const {
    if (q < -1 || q > q_max_)
        throw ValidationError("DyadicFilterBank: shell index out of range");
    return cum_[static_cast<size_t>(q + 1)];
}

ScalarField lp_project(const ScalarField& field, int q, const DyadicFilterBank& bank) {
    if (!(field.grid() == bank.grid()))
        throw ValidationError("lp_project: field grid does not match bank grid");
    if (q < -1 || q > bank.q_max()) {
        ScalarField zero(field.grid());
        return zero;
    }
    return ScalarField::from_spectral(
        field.grid(), (field.spectral() * bank.multiplier(q)).eval());
}

ScalarField lowpass(const ScalarField& field, int q, const DyadicFilterBank& bank) {
    if (q == kShellInf) return field;
    if (q < -1) {
        ScalarField zero(field.grid());
        return zero;
    }
    const int qq = std::min(q, bank.q_max());
    return ScalarField::from_spectral(
        field.grid(), (field.spectral() * bank.lowpass_multiplier(qq)).eval());
}

ScalarField tilde_project(const ScalarField& field, int q, const DyadicFilterBank& bank) {
    ScalarField out(field.grid());
    auto& s = out.spectral_mut();
    for (int p = q - 1; p <= q + 1; ++p) {
        if (p < -1 || p > bank.q_max()) continue;
        s += field.spectral() * bank.multiplier(p);
    }
    return out;
}

ShellSpectrum shell_spectrum(const ScalarField& field, double r, const DyadicFilterBank& bank,
                             std::string source) {
    ShellSpectrum out;
    out.r = r;
    out.source = std::move(source);
    for (int q = -1; q <= bank.q_max(); ++q) {
        ScalarField uq = lp_project(field, q, bank);
        out.l2.push_back(lebesgue_norm(uq, 2.0));
        out.lr.push_back(lebesgue_norm(uq, r));
        out.linf.push_back(lebesgue_norm(uq, std::numeric_limits<double>::infinity()));
    }
    return out;
}

double sobolev_norm(const ScalarField& field, double s, const DyadicFilterBank& bank) {
    if (s < -2.0 || s > 4.0)
        throw ValidationError("sobolev_norm: exponent s outside [-2, 4]");
    const double l = field.grid().length();
    double total = 0.0;
    for (int q = -1; q <= bank.q_max(); ++q) {
        const double sq =
            l * l * (bank.multiplier(q).square() * field.spectral().abs2()).sum();
        total += std::pow(bank.lambda(q), 2.0 * s) * sq;
    }
    return std::sqrt(total);
}

double besov_b1inf_norm(const ScalarField& field, const DyadicFilterBank& bank) {
    double best = 0.0;
    for (int q = -1; q <= bank.q_max(); ++q) {
        const ScalarField uq = lp_project(field, q, bank);
        best = std::max(best, bank.lambda(q) * uq.physical().abs().maxCoeff());
    }
    return best;
}

BonyDecomposition bony_decompose(const ScalarField& u, const ScalarField& v, int q,
                                 const DyadicFilterBank& bank) {
    const TorusGrid& g = u.grid();
    BonyDecomposition out{ScalarField(g), ScalarField(g), ScalarField(g)};

    auto add_projected = [&](ScalarField& acc, const ScalarField& x, const ScalarField& y) {
        ScalarField prod = dealiased_product(x, y);
        acc.spectral_mut() += prod.spectral() * bank.multiplier(q);
    };

    for (int p = q - 2; p <= q + 2; ++p) {
        if (p < -1 || p > bank.q_max()) continue;
        const ScalarField vp = lp_project(v, p, bank);
        const ScalarField up = lp_project(u, p, bank);
        if (p - 2 >= -1) {
            add_projected(out.low_high, lowpass(u, p - 2, bank), vp);
            add_projected(out.high_low, up, lowpass(v, p - 2, bank));
        }
    }
    for (int p = std::max(-1, q - 2); p <= bank.q_max(); ++p) {
        add_projected(out.high_high, tilde_project(u, p, bank), lp_project(v, p, bank));
    }
    return out;
}

ScalarField commutator_transport(const ScalarField& u1, const ScalarField& u2,
                                 const ScalarField& v, int q, int p,
                                 const DyadicFilterBank& bank) {
    const TorusGrid& g = v.grid();
    if (p - 2 < -1 || q < -1 || q > bank.q_max()) return ScalarField(g);

    const ScalarField w1 = lowpass(u1, p - 2, bank);
    const ScalarField w2 = lowpass(u2, p - 2, bank);
    const ScalarField vp = lp_project(v, p, bank);

    auto advect = [&](const ScalarField& f) {
        ScalarField out = ScalarField::from_physical(
            g, (w1.physical() * derivative(f, 1, 0).physical() +
                w2.physical() * derivative(f, 0, 1).physical())
                   .eval());
        dealias_in_place(out);
        return out;
    };

    const ScalarField term1 = lp_project(advect(vp), q, bank);
    const ScalarField term2 = advect(lp_project(vp, q, bank));
    return ScalarField::from_spectral(g, (term1.spectral() - term2.spectral()).eval());
}

namespace {

VectorField3 cross_dealiased(const VectorField3& a, const VectorField3& b) {
    const TorusGrid& g = a.grid();
    VectorField3 out(g);
    const auto &a1 = a[0].physical(), &a2 = a[1].physical(), &a3 = a[2].physical();
    const auto &b1 = b[0].physical(), &b2 = b[1].physical(), &b3 = b[2].physical();
    out[0] = ScalarField::from_physical(g, (a2 * b3 - a3 * b2).eval());
    out[1] = ScalarField::from_physical(g, (a3 * b1 - a1 * b3).eval());
    out[2] = ScalarField::from_physical(g, (a1 * b2 - a2 * b1).eval());
    for (int i = 0; i < 3; ++i) dealias_in_place(out[i]);
    return out;
}

VectorField3 curl_2p5d(const VectorField3& v) {
    // curl of a z-independent field: (d_y v3, -d_x v3, d_x v2 - d_y v1).
    VectorField3 out(v.grid());
    out[0] = derivative(v[2], 0, 1);
    ScalarField minus_dx = derivative(v[2], 1, 0);
    minus_dx.spectral_mut() *= -1.0;
    out[1] = std::move(minus_dx);
    out[2] = ScalarField::from_spectral(
        v.grid(),
        (derivative(v[1], 1, 0).spectral() - derivative(v[0], 0, 1).spectral()).eval());
    return out;
}

}  // namespace

VectorField3 commutator_curl(const VectorField3& u, const VectorField3& v, int q,
                             const DyadicFilterBank& bank) {
    const TorusGrid& g = u.grid();
    VectorField3 vq(g);
    for (int i = 0; i < 3; ++i) vq[i] = lp_project(v[i], q, bank);

    const VectorField3 term1_raw = cross_dealiased(u, curl_2p5d(v));
    const VectorField3 term2 = cross_dealiased(u, curl_2p5d(vq));

    VectorField3 out(g);
    for (int i = 0; i < 3; ++i) {
        const ScalarField t1 = lp_project(term1_raw[i], q, bank);
        out[i] = ScalarField::from_spectral(g, (t1.spectral() - term2[i].spectral()).eval());
    }
    return out;
}

}  // namespace emhd
