#include "emhd/seed.hpp"

#include <cmath>
#include <random>

#include "emhd/errors.hpp"
#include "emhd/spectral_ops.hpp"

namespace emhd {

namespace {

Eigen::ArrayXXcd gaussian_band(const TorusGrid& grid, std::mt19937_64& rng, double kmin,
                               double kmax, double decay) {
    const int n = grid.n();
    const int cut = grid.dealias_cutoff();
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::ArrayXXcd spec = Eigen::ArrayXXcd::Zero(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // Fixed traversal order keeps seeding deterministic.
    for (int j = 0; j < n; ++j) {
        const int k2 = grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const int k1 = grid.wavenumber(i);
            const double radius = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            if (radius < kmin || radius > kmax) continue;
            if (std::abs(k1) > cut || std::abs(k2) > cut) continue;
            const double re = normal(rng);
            const double im = normal(rng);
            const double damp = decay == 0.0 ? 1.0 : std::pow(radius, -decay);
            spec(i, j) = std::complex<double>(re, im) * (inv_sqrt2 * damp);
        }
    }
    return spec;
}

}  // namespace

StateAB seeded_low_mode_state(const TorusGrid& grid, std::uint64_t seed, double e0, double mu) {
    if (e0 < 0.0) throw ValidationError("seeded_low_mode_state: E(0) must be non-negative");
    std::mt19937_64 rng(seed);

    // Shells q <= 2 cover 0 < |k| < 8 (phi_2 vanishes at |k| = 8).
    ScalarField a = ScalarField::from_spectral(grid, gaussian_band(grid, rng, 1e-9, 7.9999, 0.0));
    ScalarField b = ScalarField::from_spectral(grid, gaussian_band(grid, rng, 1e-9, 7.9999, 0.0));
    a.enforce_hermitian();
    b.enforce_hermitian();

    StateAB state(std::move(a), std::move(b), 0.0, mu);
    const auto [e, d] = energy_and_dissipation(state);
    (void)d;
    const double scale = e > 0.0 ? std::sqrt(e0 / e) : 0.0;
    state.a.spectral_mut() *= scale;
    state.b.spectral_mut() *= scale;
    return state;
}

ScalarField random_band_limited(const TorusGrid& grid, std::uint64_t seed, double kmin,
                                double kmax, double decay) {
    std::mt19937_64 rng(seed);
    ScalarField f =
        ScalarField::from_spectral(grid, gaussian_band(grid, rng, kmin, kmax, decay));
    f.enforce_hermitian();
    return f;
}

}  // namespace emhd
