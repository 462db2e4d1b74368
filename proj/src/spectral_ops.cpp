#include "emhd/spectral_ops.hpp"

#include <cmath>
#include <limits>

#include "emhd/errors.hpp"

namespace emhd {

namespace {

std::complex<double> ipow(double kappa, int m) {
    // (i*kappa)^m for m in 0..4, kept exact in structure (pure real or
    // pure imaginary) instead of calling std::pow on complex.
    const double k2 = kappa * kappa;
    switch (m) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, kappa};
        case 2: return {-k2, 0.0};
        case 3: return {0.0, -k2 * kappa};
        case 4: return {k2 * k2, 0.0};
        default: throw ValidationError("derivative: order out of range");
    }
}

}  // namespace

ScalarField derivative(const ScalarField& field, int m1, int m2) {
    if (m1 < 0 || m2 < 0 || m1 + m2 > 4)
        throw ValidationError("derivative: multi-index must be non-negative with |m| <= 4");
    const TorusGrid& g = field.grid();
    const int n = g.n();
    Eigen::ArrayXXcd out(n, n);
    const auto& s = field.spectral();
    for (int j = 0; j < n; ++j) {
        const int k2 = g.wavenumber(j);
        const std::complex<double> f2 = ipow(g.physical_wavenumber(k2), m2);
        for (int i = 0; i < n; ++i) {
            const int k1 = g.wavenumber(i);
            out(i, j) = s(i, j) * ipow(g.physical_wavenumber(k1), m1) * f2;
        }
    }
    if (m1 % 2 == 1) out.row(n / 2).setZero();
    if (m2 % 2 == 1) out.col(n / 2).setZero();
    return ScalarField::from_spectral(g, std::move(out));
}

ScalarField laplacian(const ScalarField& field) {
    const TorusGrid& g = field.grid();
    const int n = g.n();
    Eigen::ArrayXXcd out(n, n);
    const auto& s = field.spectral();
    for (int j = 0; j < n; ++j) {
        const double ky = g.physical_wavenumber(g.wavenumber(j));
        for (int i = 0; i < n; ++i) {
            const double kx = g.physical_wavenumber(g.wavenumber(i));
            out(i, j) = -(kx * kx + ky * ky) * s(i, j);
        }
    }
    return ScalarField::from_spectral(g, std::move(out));
}

ScalarField dealias(const ScalarField& field) {
    ScalarField out = field;
    dealias_in_place(out);
    return out;
}

void dealias_in_place(ScalarField& field) {
    const TorusGrid& g = field.grid();
    const int n = g.n();
    const int cut = g.dealias_cutoff();
    auto& s = field.spectral_mut();
    for (int j = 0; j < n; ++j) {
        const int k2 = std::abs(g.wavenumber(j));
        for (int i = 0; i < n; ++i) {
            const int k1 = std::abs(g.wavenumber(i));
            if (k1 > cut || k2 > cut) s(i, j) = 0.0;
        }
    }
}

bool is_dealiased(const ScalarField& field, double tol) {
    const TorusGrid& g = field.grid();
    const int n = g.n();
    const int cut = g.dealias_cutoff();
    const auto& s = field.spectral();
    for (int j = 0; j < n; ++j) {
        const int k2 = std::abs(g.wavenumber(j));
        for (int i = 0; i < n; ++i) {
            const int k1 = std::abs(g.wavenumber(i));
            if ((k1 > cut || k2 > cut) && std::abs(s(i, j)) > tol) return false;
        }
    }
    return true;
}

double lebesgue_norm(const ScalarField& field, double r) {
    if (r < 1.0) throw ValidationError("lebesgue_norm: exponent r must be >= 1");
    const auto& u = field.physical();
    if (std::isinf(r)) return u.abs().maxCoeff();
    const double w = field.grid().cell_area();
    if (r == 1.0) return w * u.abs().sum();
    if (r == 2.0) return std::sqrt(w * u.square().sum());
    return std::pow(w * u.abs().pow(r).sum(), 1.0 / r);
}

double parseval_l2(const ScalarField& field) {
    const double l = field.grid().length();
    return std::sqrt(l * l * field.spectral().abs2().sum());
}

double mean(const ScalarField& field) { return field.spectral()(0, 0).real(); }

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw ValidationError("dealiased_product: grid mismatch");
    ScalarField out =
        ScalarField::from_physical(a.grid(), (a.physical() * b.physical()).eval());
    dealias_in_place(out);
    return out;
}

}  // namespace emhd
