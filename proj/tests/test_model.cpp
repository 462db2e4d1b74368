#include <numbers>

#include "doctest.h"
#include "emhd/errors.hpp"
#include "emhd/littlewood_paley.hpp"
#include "emhd/model.hpp"
#include "emhd/seed.hpp"
#include "emhd/spectral_ops.hpp"
#include "test_helpers.hpp"

using namespace emhd;
using emhd::testing::cosine_mode;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField sine_mode(const TorusGrid& g, int k1, int k2, double amp = 1.0) {
    return cosine_mode(g, k1, k2, amp, -kPi / 2.0);  // sin = cos(. - pi/2)
}
}  // namespace

TEST_CASE("magnetic field reconstruction") {
    const TorusGrid g(64);
    SUBCASE("zero state") {
        const StateAB st(g, 0.1);
        const VectorField3 field = magnetic_field(st);
        for (int i = 0; i < 3; ++i) CHECK(field[i].physical().abs().maxCoeff() == 0.0);
    }
    SUBCASE("a = sin(2 pi y) gives B = (2 pi cos(2 pi y), 0, 0)") {
        StateAB st(sine_mode(g, 0, 1), ScalarField(g), 0.0, 0.1);
        const VectorField3 field = magnetic_field(st);
        const ScalarField expected = cosine_mode(g, 0, 1, 2.0 * kPi);
        CHECK(emhd::testing::max_abs_diff(field[0].physical(), expected.physical()) <= 1e-12);
        CHECK(field[1].physical().abs().maxCoeff() <= 1e-13);
        CHECK(field[2].physical().abs().maxCoeff() == 0.0);
    }
    SUBCASE("divergence-free for random states") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            const StateAB st = seeded_low_mode_state(g, seed, 1.0, 0.1);
            const VectorField3 field = magnetic_field(st);
            const Eigen::ArrayXXd ax = derivative(st.a, 1, 0).physical();
            const Eigen::ArrayXXd ay = derivative(st.a, 0, 1).physical();
            const double grad_sup = (ax.square() + ay.square()).sqrt().maxCoeff();
            CHECK(divergence_sup(field) <= 1e-12 * grad_sup);
        }
    }
}

TEST_CASE("nonlinearities J1 and J2") {
    const TorusGrid g(64);
    SUBCASE("a = sin(2 pi x), b = sin(2 pi y): J1 = -4 pi^2 cos cos") {
        StateAB st(sine_mode(g, 1, 0), sine_mode(g, 0, 1), 0.0, 0.1);
        auto [na, nb] = nonlinear_rhs(st, Variant::emhd1);
        // N_a = -J1 = +4 pi^2 cos(2 pi x) cos(2 pi y)
        const double scale = 4.0 * kPi * kPi;
        CHECK(na.physical().maxCoeff() == doctest::Approx(scale).epsilon(1e-12));
        Eigen::ArrayXXd expected =
            scale * cosine_mode(g, 1, 0).physical() * cosine_mode(g, 0, 1).physical();
        CHECK(emhd::testing::max_abs_diff(na.physical(), expected) <= 1e-11 * scale);
        // a depends only on x: a_y = 0 kills J2
        CHECK(nb.physical().abs().maxCoeff() <= 1e-11);
    }
    SUBCASE("b = a pointwise kills J1") {
        const ScalarField f = dealias(random_band_limited(g, 9, 0.5, 10.0, 1.0));
        StateAB st(f, f, 0.0, 0.1);
        auto [na, nb] = nonlinear_rhs(st, Variant::emhd1);
        (void)nb;
        const Eigen::ArrayXXd fx = derivative(f, 1, 0).physical();
        const Eigen::ArrayXXd fy = derivative(f, 0, 1).physical();
        const double scale = (fx.square() + fy.square()).maxCoeff();
        CHECK(na.physical().abs().maxCoeff() <= 1e-13 * scale);
    }
    SUBCASE("emhd2 drops J2") {
        const StateAB st = seeded_low_mode_state(g, 4, 1.0, 0.1);
        auto [na, nb] = nonlinear_rhs(st, Variant::emhd2);
        (void)na;
        CHECK(nb.physical().abs().maxCoeff() == 0.0);
    }
    SUBCASE("Jacobian antisymmetry: J1(a,b) = -J1(b,a)") {
        const ScalarField u = dealias(random_band_limited(g, 10, 0.5, 12.0, 1.0));
        const ScalarField v = dealias(random_band_limited(g, 11, 0.5, 12.0, 1.0));
        StateAB st1(u, v, 0.0, 0.1), st2(v, u, 0.0, 0.1);
        auto [na1, nb1] = nonlinear_rhs(st1, Variant::emhd2);
        auto [na2, nb2] = nonlinear_rhs(st2, Variant::emhd2);
        (void)nb1;
        (void)nb2;
        // N_a = -J1, so antisymmetry means na1 = -na2
        const double scale = na1.physical().abs().maxCoeff();
        CHECK(emhd::testing::max_abs_diff(na1.physical(), (-na2.physical()).eval()) <=
              1e-12 * scale);
    }
    SUBCASE("nonlinearities preserve the spatial mean") {
        for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
            const StateAB st = seeded_low_mode_state(g, seed, 1.0, 0.1);
            auto [na, nb] = nonlinear_rhs(st, Variant::emhd1);
            const double scale_a = lebesgue_norm(na, std::numeric_limits<double>::infinity());
            const double scale_b = lebesgue_norm(nb, std::numeric_limits<double>::infinity());
            CHECK(std::abs(mean(na)) <= 1e-13 * scale_a);
            CHECK(std::abs(mean(nb)) <= 1e-13 * scale_b);
        }
    }
}

TEST_CASE("hall term") {
    const TorusGrid g(64);
    SUBCASE("zero and constant fields") {
        VectorField3 z(g);
        VectorField3 hz = hall_term_3d(z);
        for (int i = 0; i < 3; ++i) CHECK(hz[i].physical().abs().maxCoeff() == 0.0);

        VectorField3 c(g);
        for (int i = 0; i < 3; ++i)
            c[i] = ScalarField::from_physical(g,
                                              Eigen::ArrayXXd::Constant(64, 64, 1.0 + i));
        VectorField3 hc = hall_term_3d(c);
        for (int i = 0; i < 3; ++i) CHECK(hc[i].physical().abs().maxCoeff() <= 1e-12);
    }
    SUBCASE("representation route matches the scalar nonlinearities") {
        // For B = (a_y, -a_x, b): curl((curl B) x B) = (d_y J1, -d_x J1, -J2).
        const StateAB st = seeded_low_mode_state(g, 31, 1.0, 0.1);
        const VectorField3 hall = hall_term_3d(magnetic_field(st));
        auto [na, nb] = nonlinear_rhs(st, Variant::emhd1);
        ScalarField j1(st.grid());
        j1.spectral_mut() = -na.spectral();  // N_a = -J1
        const ScalarField dyj1 = derivative(j1, 0, 1);
        const ScalarField dxj1 = derivative(j1, 1, 0);
        const double scale =
            std::max({lebesgue_norm(dyj1, 2.0), lebesgue_norm(dxj1, 2.0),
                      lebesgue_norm(nb, 2.0)});

        ScalarField r0(g), r1(g), r2(g);
        r0.spectral_mut() = hall[0].spectral() - dyj1.spectral();
        r1.spectral_mut() = hall[1].spectral() + dxj1.spectral();
        r2.spectral_mut() = hall[2].spectral() + nb.spectral();  // hall_z = -J2 = -nb
        CHECK(lebesgue_norm(r0, 2.0) <= 1e-11 * scale);
        CHECK(lebesgue_norm(r1, 2.0) <= 1e-11 * scale);
        CHECK(lebesgue_norm(r2, 2.0) <= 1e-11 * scale);
    }
}

TEST_CASE("energy and dissipation") {
    const TorusGrid g(64);
    SUBCASE("zero state") {
        const auto [e, d] = energy_and_dissipation(StateAB(g, 0.1));
        CHECK(e == 0.0);
        CHECK(d == 0.0);
    }
    SUBCASE("b = cos(2 pi y): E = 1/4, D = 2 pi^2") {
        StateAB st(ScalarField(g), cosine_mode(g, 0, 1), 0.0, 0.1);
        const auto [e, d] = energy_and_dissipation(st);
        CHECK(e == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(d == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
    }
    SUBCASE("a = cos(2 pi x): E = pi^2, D = 8 pi^4") {
        StateAB st(cosine_mode(g, 1, 0), ScalarField(g), 0.0, 0.1);
        const auto [e, d] = energy_and_dissipation(st);
        CHECK(e == doctest::Approx(kPi * kPi).epsilon(1e-13));                 // (2pi)^2/4
        CHECK(d == doctest::Approx(8.0 * kPi * kPi * kPi * kPi).epsilon(1e-13));  // (2pi)^4/2
    }
}

TEST_CASE("forcing synthesis") {
    const TorusGrid g(64);
    SUBCASE("empty spec") {
        const auto [fa, fb] = forcing_eval({}, g, 1.0);
        CHECK(fa.physical().abs().maxCoeff() == 0.0);
        CHECK(fb.physical().abs().maxCoeff() == 0.0);
    }
    SUBCASE("steady cosine mode") {
        ForcingSpec spec;
        spec.modes.push_back({ForcingMode::Target::b, 1, 0, 0.7, 0.0, 0.0});
        const auto [fa, fb] = forcing_eval(spec, g, 17.3);
        CHECK(fa.physical().abs().maxCoeff() == 0.0);
        CHECK(emhd::testing::max_abs_diff(fb.physical(),
                                          cosine_mode(g, 1, 0, 0.7).physical()) <= 1e-14);
    }
    SUBCASE("sin(omega t) modulation peaks at t = pi/(2 omega)") {
        const double omega = 3.0;
        ForcingSpec spec;
        spec.modes.push_back({ForcingMode::Target::a, 2, 1, 1.25, 0.4, omega});
        const auto [fa, fb] = forcing_eval(spec, g, kPi / (2.0 * omega));
        (void)fb;
        CHECK(emhd::testing::max_abs_diff(fa.physical(),
                                          cosine_mode(g, 2, 1, 1.25, 0.4).physical()) <= 1e-12);
    }
    SUBCASE("mode above cutoff rejected at validation") {
        ForcingSpec spec;
        spec.modes.push_back({ForcingMode::Target::b, 40, 0, 1.0, 0.0, 0.0});
        CHECK_THROWS_AS(spec.validate(g), ValidationError);  // cutoff 21 at N=64
    }
}

TEST_CASE("dyadic rescaling") {
    const TorusGrid g(64);
    SUBCASE("m = 0 is the identity") {
        const StateAB st = seeded_low_mode_state(g, 5, 1.0, 0.1);
        const StateAB out = rescale(st, 0);
        CHECK((out.a.spectral() - st.a.spectral()).abs().maxCoeff() == 0.0);
        CHECK(out.time == st.time);
    }
    SUBCASE("a = cos(2 pi x), m = 1 gives half cos(4 pi x)") {
        StateAB st(cosine_mode(g, 1, 0), ScalarField(g), 0.25, 0.1);
        const StateAB out = rescale(st, 1);
        CHECK(emhd::testing::max_abs_diff(out.a.physical(),
                                          cosine_mode(g, 2, 0, 0.5).physical()) <= 1e-13);
        CHECK(out.time == doctest::Approx(1.0).epsilon(1e-15));  // t * lambda^2
    }
    SUBCASE("shell content moves from q to q + m") {
        const DyadicFilterBank bank(g);
        StateAB st(ScalarField(g), cosine_mode(g, 3, 0), 0.0, 0.1);  // |k|=3: shell 1 and 2
        const StateAB out = rescale(st, 2);                          // -> |k|=12: shells 3,4
        const ShellSpectrum src = shell_spectrum(st.b, 2.0, bank);
        const ShellSpectrum dst = shell_spectrum(out.b, 2.0, bank);
        for (int q = -1; q + 2 <= bank.q_max(); ++q) {
            CHECK(dst.l2[static_cast<size_t>(q + 3)] ==
                  doctest::Approx(src.l2[static_cast<size_t>(q + 1)]).epsilon(1e-12));
        }
    }
    SUBCASE("mode mapping above the cutoff is rejected") {
        StateAB st(cosine_mode(g, 6, 0), ScalarField(g), 0.0, 0.1);  // 6 * 2^2 = 24 > 21
        CHECK_THROWS_AS(rescale(st, 2), ValidationError);
        CHECK_NOTHROW(rescale(st, 1));
    }
}
