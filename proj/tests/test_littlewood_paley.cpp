#include <numbers>

#include "doctest.h"
#include "emhd/errors.hpp"
#include "emhd/littlewood_paley.hpp"
#include "emhd/seed.hpp"
#include "emhd/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace emhd;
using emhd::testing::cosine_mode;

TEST_CASE("chi and phi hit the plateau and support values exactly") {
    CHECK(chi(0.0) == 1.0);
    CHECK(chi(0.5) == 1.0);
    CHECK(chi(0.75) == 1.0);
    CHECK(chi(1.0) == 0.0);
    CHECK(chi(1.2) == 0.0);
    CHECK(chi(-0.5) == 1.0);
    // strictly between plateau and support edge
    CHECK(chi(0.9) > 0.0);
    CHECK(chi(0.9) < 1.0);
    // phi(1) = chi(1/2) - chi(1) = 1
    CHECK(phi(1.0) == 1.0);
    CHECK(phi(0.75) == 0.0);
    CHECK(phi(2.0) == 0.0);
    CHECK(phi(0.5) == 0.0);
}

TEST_CASE("partition of unity over every retained mode") {
    for (int n : {64, 128}) {
        const TorusGrid g(n);
        const DyadicFilterBank bank(g);
        const int cut = g.dealias_cutoff();
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (std::abs(k2) > cut) continue;
            for (int i = 0; i < n; ++i) {
                const int k1 = g.wavenumber(i);
                if (std::abs(k1) > cut) continue;
                double total = 0.0;
                for (int q = -1; q <= bank.q_max(); ++q) total += bank.multiplier(q)(i, j);
                worst = std::max(worst, std::abs(total - 1.0));
            }
        }
        CAPTURE(n);
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("multiplier support bounds") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    for (int q = 0; q <= bank.q_max(); ++q) {
        for (int j = 0; j < 64; ++j)
            for (int i = 0; i < 64; ++i) {
                const double radius = std::hypot(static_cast<double>(g.wavenumber(i)),
                                                 static_cast<double>(g.wavenumber(j)));
                const double value = bank.multiplier(q)(i, j);
                CHECK(value >= 0.0);
                CHECK(value <= 1.0);
                const double xi = radius / std::ldexp(1.0, q);
                if (xi <= 0.75 || xi >= 2.0) CHECK(value == 0.0);
            }
    }
    // q = -1 follows chi: zero for |k| >= 1
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i)
            if (i || j) CHECK(bank.multiplier(-1)(i, j) == 0.0);
}

TEST_CASE("projection of a single |k| = 1 mode") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField u = cosine_mode(g, 1, 0);
    // |k| = 1 sits entirely in shell 0: phi(1) = 1, phi(1/2) = 0, chi(1) = 0
    CHECK(emhd::testing::max_abs_diff(lp_project(u, 0, bank).physical(), u.physical()) <= 1e-13);
    CHECK(lp_project(u, 1, bank).physical().abs().maxCoeff() <= 1e-14);
    CHECK(lp_project(u, -1, bank).physical().abs().maxCoeff() <= 1e-14);
    // and the -1 lowpass therefore misses it
    CHECK(lowpass(u, -1, bank).physical().abs().maxCoeff() <= 1e-14);
}

TEST_CASE("projections of the zero field vanish") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField z(g);
    for (int q = -1; q <= bank.q_max(); ++q)
        CHECK(lp_project(z, q, bank).physical().abs().maxCoeff() == 0.0);
}

TEST_CASE("shell reconstruction and low-pass sums") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField u = dealias(random_band_limited(g, 7, 0.5, 21.5, 0.5));

    ScalarField sum(g);
    for (int q = -1; q <= bank.q_max(); ++q)
        sum.spectral_mut() += lp_project(u, q, bank).spectral();
    const double amp = u.physical().abs().maxCoeff();
    CHECK(emhd::testing::max_abs_diff(sum.physical(), u.physical()) <= 1e-12 * amp);

    CHECK(emhd::testing::max_abs_diff(lowpass(u, bank.q_max(), bank).physical(), u.physical()) <=
          1e-12 * amp);
    CHECK(emhd::testing::max_abs_diff(lowpass(u, kShellInf, bank).physical(), u.physical()) ==
          0.0);

    // tilde projection is the exact 3-shell sum
    const int q = 3;
    ScalarField tilde_ref(g);
    for (int p = q - 1; p <= q + 1; ++p)
        tilde_ref.spectral_mut() += lp_project(u, p, bank).spectral();
    CHECK((tilde_project(u, q, bank).spectral() - tilde_ref.spectral()).abs().maxCoeff() == 0.0);
}

TEST_CASE("shell orthogonality of supports") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField u = dealias(random_band_limited(g, 8, 0.5, 21.0, 0.0));
    for (int q = -1; q <= bank.q_max(); ++q) {
        const ScalarField uq = lp_project(u, q, bank);
        for (int p = -1; p <= bank.q_max(); ++p) {
            if (std::abs(p - q) < 2) continue;
            CHECK(lp_project(uq, p, bank).physical().abs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("shell spectrum places content in the right shells") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    SUBCASE("zero field") {
        const ShellSpectrum sp = shell_spectrum(ScalarField(g), 3.0, bank);
        for (size_t i = 0; i < sp.l2.size(); ++i) {
            CHECK(sp.l2[i] == 0.0);
            CHECK(sp.lr[i] == 0.0);
            CHECK(sp.linf[i] == 0.0);
        }
    }
    SUBCASE("single cosine in shell 0") {
        const ShellSpectrum sp = shell_spectrum(cosine_mode(g, 1, 0), 2.0, bank);
        CHECK(sp.l2[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
        for (int q = -1; q <= bank.q_max(); ++q)
            if (q != 0) CHECK(sp.l2[static_cast<size_t>(q + 1)] <= 1e-13);
    }
    SUBCASE("|k|=1 and |k|=8 populate exactly shells 0 and 3") {
        ScalarField u(g);
        u.physical_mut() =
            cosine_mode(g, 1, 0).physical() + cosine_mode(g, 8, 0).physical();
        const ShellSpectrum sp = shell_spectrum(u, 2.0, bank);
        // phi_3(8) = phi(1) = 1; phi_2(8) = phi(2) = 0; phi_4(8) = phi(1/2) = 0
        for (int q = -1; q <= bank.q_max(); ++q) {
            const double v = sp.l2[static_cast<size_t>(q + 1)];
            if (q == 0 || q == 3)
                CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
            else
                CHECK(v <= 1e-13);
        }
    }
}

TEST_CASE("sobolev norm") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    SUBCASE("single shell-0 mode: lambda_0^s weight is 1 for every s") {
        const ScalarField u = cosine_mode(g, 1, 0);
        for (double s : {-1.0, -0.5, 0.0, 1.0, 2.0})
            CHECK(sobolev_norm(u, s, bank) ==
                  doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("zero field") { CHECK(sobolev_norm(ScalarField(g), 1.0, bank) == 0.0); }
    SUBCASE("s = 0 stays within the partition constants of Parseval") {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const ScalarField u = random_band_limited(g, seed, 0.5, 21.0, 0.7);
            const double ratio = sobolev_norm(u, 0.0, bank) / parseval_l2(u);
            CHECK(ratio >= 1.0 / std::sqrt(3.0) - 1e-12);
            CHECK(ratio <= std::sqrt(3.0) + 1e-12);
        }
    }
    SUBCASE("range of s enforced") {
        const ScalarField u = cosine_mode(g, 1, 0);
        CHECK_THROWS_AS(sobolev_norm(u, -2.5, bank), ValidationError);
        CHECK_THROWS_AS(sobolev_norm(u, 4.5, bank), ValidationError);
    }
}

TEST_CASE("besov B^1_{inf,inf} norm") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    CHECK(besov_b1inf_norm(ScalarField(g), bank) == 0.0);
    // cos(2 pi x): single shell q=0, lambda_0 = 1, gridded sup = 1
    const ScalarField u = cosine_mode(g, 1, 0);
    CHECK(besov_b1inf_norm(u, bank) == doctest::Approx(1.0).epsilon(1e-13));
    // homogeneity
    ScalarField v = u;
    v.spectral_mut() *= 3.5;
    CHECK(besov_b1inf_norm(v, bank) ==
          doctest::Approx(3.5 * besov_b1inf_norm(u, bank)).epsilon(1e-13));
}

TEST_CASE("bony decomposition reassembles the projected product") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);

    SUBCASE("v identically 1 collapses to the plain projection") {
        const ScalarField u = dealias(random_band_limited(g, 3, 0.5, 21.0, 0.5));
        ScalarField one = ScalarField::from_physical(g, Eigen::ArrayXXd::Constant(64, 64, 1.0));
        for (int q : {-1, 0, 2, 4}) {
            const BonyDecomposition parts = bony_decompose(u, one, q, bank);
            const ScalarField direct = lp_project(u, q, bank);
            const Eigen::ArrayXXcd total = parts.low_high.spectral() +
                                           parts.high_low.spectral() +
                                           parts.high_high.spectral();
            CHECK((total - direct.spectral()).abs().maxCoeff() <=
                  1e-12 * (1.0 + direct.spectral().abs().maxCoeff()));
        }
    }

    SUBCASE("u = v = cos(2 pi x) against the direct product projection") {
        const ScalarField u = cosine_mode(g, 1, 0);
        for (int q = -1; q <= bank.q_max(); ++q) {
            const BonyDecomposition parts = bony_decompose(u, u, q, bank);
            const ScalarField direct = lp_project(dealiased_product(u, u), q, bank);
            const Eigen::ArrayXXcd total = parts.low_high.spectral() +
                                           parts.high_low.spectral() +
                                           parts.high_high.spectral();
            CHECK((total - direct.spectral()).abs().maxCoeff() <= 1e-12);
        }
    }

    SUBCASE("random fields: relative residual below 1e-10 for every q") {
        const ScalarField u = dealias(random_band_limited(g, 31, 0.5, 21.0, 0.3));
        const ScalarField v = dealias(random_band_limited(g, 32, 0.5, 21.0, 0.3));
        const ScalarField uv = dealiased_product(u, v);
        const double scale = lebesgue_norm(uv, 2.0);
        for (int q = -1; q <= bank.q_max(); ++q) {
            const BonyDecomposition parts = bony_decompose(u, v, q, bank);
            ScalarField total(g);
            total.spectral_mut() = parts.low_high.spectral() + parts.high_low.spectral() +
                                   parts.high_high.spectral();
            const ScalarField direct = lp_project(uv, q, bank);
            ScalarField resid(g);
            resid.spectral_mut() = total.spectral() - direct.spectral();
            CHECK(lebesgue_norm(resid, 2.0) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("transport commutator") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField v = dealias(random_band_limited(g, 41, 0.5, 21.0, 0.5));

    SUBCASE("constant u commutes") {
        ScalarField c1 = ScalarField::from_physical(g, Eigen::ArrayXXd::Constant(64, 64, 2.0));
        ScalarField c2 = ScalarField::from_physical(g, Eigen::ArrayXXd::Constant(64, 64, -1.0));
        const ScalarField comm = commutator_transport(c1, c2, v, 4, 4, bank);
        CHECK(lebesgue_norm(comm, 2.0) <= 1e-12 * lebesgue_norm(v, 2.0));
    }
    SUBCASE("zero u gives zero") {
        const ScalarField z(g);
        const ScalarField comm = commutator_transport(z, z, v, 4, 4, bank);
        CHECK(lebesgue_norm(comm, 2.0) == 0.0);
    }
    SUBCASE("p too small for a low-pass leg gives zero") {
        const ScalarField u = random_band_limited(g, 42, 0.5, 21.0, 0.5);
        const ScalarField comm = commutator_transport(u, u, v, 0, 0, bank);
        CHECK(lebesgue_norm(comm, 2.0) == 0.0);
    }
}

TEST_CASE("curl commutator trivial cases") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    VectorField3 v(g);
    for (int i = 0; i < 3; ++i)
        v[i] = dealias(random_band_limited(g, 50 + static_cast<std::uint64_t>(i), 0.5, 21.0, 0.5));

    SUBCASE("u = 0") {
        const VectorField3 z(g);
        const VectorField3 comm = commutator_curl(z, v, 3, bank);
        for (int i = 0; i < 3; ++i) CHECK(lebesgue_norm(comm[i], 2.0) == 0.0);
    }
    SUBCASE("constant u") {
        VectorField3 c(g);
        for (int i = 0; i < 3; ++i)
            c[i] = ScalarField::from_physical(
                g, Eigen::ArrayXXd::Constant(64, 64, 0.5 * (i + 1)));
        const VectorField3 comm = commutator_curl(c, v, 3, bank);
        double scale = 0.0;
        for (int i = 0; i < 3; ++i) scale += lebesgue_norm(v[i], 2.0);
        for (int i = 0; i < 3; ++i) CHECK(lebesgue_norm(comm[i], 2.0) <= 1e-11 * scale);
    }
    SUBCASE("curl-free v") {
        // v = grad of a scalar (z-independent) plus zero third component has
        // curl = (0, 0, d_x v2 - d_y v1) = 0 when v = (f_x, f_y, 0).
        const ScalarField f = dealias(random_band_limited(g, 60, 0.5, 20.0, 1.0));
        VectorField3 grad(g);
        grad[0] = derivative(f, 1, 0);
        grad[1] = derivative(f, 0, 1);
        VectorField3 u(g);
        for (int i = 0; i < 3; ++i)
            u[i] = dealias(random_band_limited(g, 70 + static_cast<std::uint64_t>(i), 0.5, 10.0,
                                               0.5));
        const VectorField3 comm = commutator_curl(u, grad, 3, bank);
        double scale = 0.0;
        for (int i = 0; i < 3; ++i) scale += lebesgue_norm(grad[i], 2.0);
        for (int i = 0; i < 3; ++i) CHECK(lebesgue_norm(comm[i], 2.0) <= 1e-10 * scale);
    }
}

TEST_CASE("norm homogeneity under scalar multiplication") {
    const TorusGrid g(64);
    const DyadicFilterBank bank(g);
    const ScalarField u = dealias(random_band_limited(g, 90, 0.5, 21.0, 0.5));
    ScalarField cu = u;
    cu.spectral_mut() *= -2.5;
    CHECK(sobolev_norm(cu, 1.5, bank) ==
          doctest::Approx(2.5 * sobolev_norm(u, 1.5, bank)).epsilon(1e-12));
    CHECK(besov_b1inf_norm(cu, bank) ==
          doctest::Approx(2.5 * besov_b1inf_norm(u, bank)).epsilon(1e-12));
    CHECK(lebesgue_norm(cu, 3.0) == doctest::Approx(2.5 * lebesgue_norm(u, 3.0)).epsilon(1e-12));
}
