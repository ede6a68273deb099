#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "znwedge/kinematics.hpp"

using namespace znwedge;

TEST_CASE("mass_shell_momentum on real and complex rapidities") {
    TwoMomentum p = mass_shell_momentum(2.0, Rapidity{Complex(0.7, 0.0)});
    CHECK(p.p0.real() == doctest::Approx(2.0 * std::cosh(0.7)).epsilon(1e-14));
    CHECK(p.p1.real() == doctest::Approx(2.0 * std::sinh(0.7)).epsilon(1e-14));
    CHECK(p.p0.imag() == 0.0);

    // p0^2 - p1^2 = m^2 holds off the real axis as well.
    TwoMomentum q = mass_shell_momentum(1.5, Rapidity{Complex(0.3, 1.1)});
    Complex inv = q.p0 * q.p0 - q.p1 * q.p1;
    CHECK(std::abs(inv - 2.25) < 1e-12);

    CHECK_THROWS_AS(mass_shell_momentum(0.0, Rapidity{Complex(0.0, 0.0)}), Error);
    CHECK_THROWS_AS(mass_shell_momentum(-1.0, Rapidity{Complex(0.0, 0.0)}), Error);
}

TEST_CASE("rapidity strip membership") {
    CHECK(Rapidity{Complex(0.4, 0.5)}.in_physical_strip());
    CHECK_FALSE(Rapidity{Complex(0.4, 0.0)}.in_physical_strip());
    CHECK_FALSE(Rapidity{Complex(0.4, kPi)}.in_physical_strip());
    CHECK_FALSE(Rapidity{Complex(0.4, -0.1)}.in_physical_strip());
}

static void check_angle_identity(double ma, double mb, double mc) {
    FusionAngles a = solve_fusion_angles(ma, mb, mc);
    Complex lhs = ma * std::exp(Complex(0.0, a.theta_ab)) +
                  mb * std::exp(Complex(0.0, -a.theta_ba));
    CHECK(std::abs(lhs - mc) < 1e-12 * mc);
    CHECK(a.theta_ab > 0.0);
    CHECK(a.theta_ab < kPi);
    CHECK(a.theta_ba > 0.0);
    CHECK(a.theta_ba < kPi);
    CHECK(a.theta_sum == doctest::Approx(a.theta_ab + a.theta_ba).epsilon(1e-15));

    // Law of cosines fixes each angle independently of the solver:
    // m_c^2 = m_a^2 + m_b^2 + 2 m_a m_b cos(theta_ab + theta_ba).
    double cos_sum = (mc * mc - ma * ma - mb * mb) / (2.0 * ma * mb);
    CHECK(std::cos(a.theta_sum) == doctest::Approx(cos_sum).epsilon(1e-12));
    // Projecting the triangle onto the real axis resolves the split.
    double cos_ab = (ma + mb * std::cos(a.theta_sum)) / mc;
    CHECK(std::cos(a.theta_ab) == doctest::Approx(cos_ab).epsilon(1e-12));
}

TEST_CASE("fusion angles for reference triangles") {
    FusionAngles eq = solve_fusion_angles(1.0, 1.0, 1.0);
    CHECK(eq.theta_ab == doctest::Approx(kPi / 3.0).epsilon(1e-13));
    CHECK(eq.theta_ba == doctest::Approx(kPi / 3.0).epsilon(1e-13));

    FusionAngles rt = solve_fusion_angles(1.0, 1.0, std::sqrt(2.0));
    CHECK(rt.theta_ab == doctest::Approx(kPi / 4.0).epsilon(1e-13));
    CHECK(rt.theta_ba == doctest::Approx(kPi / 4.0).epsilon(1e-13));

    check_angle_identity(1.0, 1.0, 1.0);
    check_angle_identity(1.0, 1.0, std::sqrt(2.0));
    check_angle_identity(1.0, 1.618033988749895, 1.618033988749895);
    check_angle_identity(2.0, 3.0, 4.2);
    check_angle_identity(0.5, 1.9, 2.1);
}

TEST_CASE("fusion angle failure modes") {
    CHECK_THROWS_AS(solve_fusion_angles(1.0, 1.0, 3.0), NoFusionSolution);
    CHECK_THROWS_AS(solve_fusion_angles(2.0, 1.0, 0.5), NoFusionSolution);
    CHECK_THROWS_AS(solve_fusion_angles(1.0, 1.0, 2.0 - 1e-12), ThresholdError);
    CHECK_THROWS_AS(solve_fusion_angles(2.0, 1.0, 1.0 + 1e-12), ThresholdError);
    CHECK_THROWS_AS(solve_fusion_angles(1.0, -1.0, 1.0), Error);
}

TEST_CASE("mass spectra match sin(pi t/N)/sin(pi/N)") {
    for (int N = 3; N <= 6; ++N) {
        MassSpectrum sp = zn_mass_spectrum(N, 1.0);
        REQUIRE(sp.N == N);
        for (int t = 1; t <= N - 1; ++t) {
            double expected = std::sin(kPi * t / N) / std::sin(kPi / N);
            CHECK(sp.mass(t) == doctest::Approx(expected).epsilon(1e-10));
        }
        // Charge conjugation pairs types t and N - t at equal mass.
        for (int t = 1; t <= N - 1; ++t)
            CHECK(sp.mass(t) == doctest::Approx(sp.mass(N - t)).epsilon(1e-12));
    }

    MassSpectrum s4 = zn_mass_spectrum(4, 2.5);
    CHECK(s4.mass(2) == doctest::Approx(2.5 * std::sqrt(2.0)).epsilon(1e-12));

    MassSpectrum s5 = zn_mass_spectrum(5, 1.0);
    CHECK(s5.mass(2) == doctest::Approx(2.0 * std::cos(kPi / 5.0)).epsilon(1e-12));

    CHECK_THROWS_AS(zn_mass_spectrum(2, 1.0), Error);
    CHECK_THROWS_AS(zn_mass_spectrum(3, 0.0), Error);
    CHECK_THROWS_AS(zn_mass_spectrum(3, 1.0).mass(3), Error);
    CHECK_THROWS_AS(zn_mass_spectrum(3, 1.0).mass(0), Error);
}
