#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "znwedge/smatrix.hpp"
#include "znwedge/testfn.hpp"

using namespace znwedge;

namespace {

TestFunction left_pair() {
    TestFunction f;
    f.N = 3;
    f.components[1] = BumpComponent{0.2, -2.6, 0.9, Complex(1.0, 0.0)};
    f.components[2] = BumpComponent{-0.3, -3.2, 1.1, Complex(0.6, -0.3)};
    return f;
}

TestFunction right_pair() {
    TestFunction g;
    g.N = 3;
    g.components[1] = BumpComponent{-0.1, 2.7, 1.0, Complex(0.8, 0.2)};
    g.components[2] = BumpComponent{0.4, 3.1, 0.8, Complex(1.0, 0.0)};
    return g;
}

}  // namespace

TEST_CASE("wedge support geometry") {
    Wedge right{WedgeSide::Right, 0.0, 0.0};
    Wedge left{WedgeSide::Left, 0.0, 0.0};

    TestFunction f;
    f.N = 3;
    f.components[1] = BumpComponent{0.0, -5.0, 1.0, Complex(1.0, 0.0)};
    CHECK(wedge_support_check(f, left));
    CHECK_FALSE(wedge_support_check(f, right));
    // Distance from (0, -5) to either boundary ray of the left wedge is
    // 5/sqrt(2), so the margin is that minus the radius.
    CHECK(wedge_margin(f, left) ==
          doctest::Approx(5.0 / std::sqrt(2.0) - 1.0).epsilon(1e-14));

    // Disc centered at the apex never fits.
    f.components[1] = BumpComponent{0.0, 0.0, 0.1, Complex(1.0, 0.0)};
    CHECK_FALSE(wedge_support_check(f, left));
    CHECK_FALSE(wedge_support_check(f, right));

    // At (0, 5) in the right wedge the cone boundary is 5/sqrt(2) away.
    f.components[1] = BumpComponent{0.0, 5.0, 3.5, Complex(1.0, 0.0)};
    CHECK(wedge_support_check(f, right));
    f.components[1].radius = 3.6;
    CHECK_FALSE(wedge_support_check(f, right));

    // Translation moves the apex.
    Wedge shifted{WedgeSide::Right, 1.0, -2.0};
    f.components[1] = BumpComponent{1.0, 0.1, 1.0, Complex(1.0, 0.0)};
    CHECK(wedge_support_check(f, shifted));  // depth (2.1 - 0)/sqrt(2) ≈ 1.48
    f.components[1] = BumpComponent{3.5, 0.1, 1.0, Complex(1.0, 0.0)};
    CHECK_FALSE(wedge_support_check(f, shifted));  // |dx0| = 2.5 exceeds dx1

    CHECK(wedge_margin(left_pair(), left) > 0.0);
    CHECK(wedge_margin(right_pair(), right) > 0.0);
    CHECK(std::isinf(wedge_margin(TestFunction{3, {}}, right)));
}

TEST_CASE("cpt partner reflects support and conjugates types") {
    TestFunction f = left_pair();
    TestFunction hat = cpt_partner(f);
    REQUIRE(hat.components.size() == 2);
    // Type 1 of the partner comes from type 2 of f.
    CHECK(hat.components[1].c0 == doctest::Approx(0.3));
    CHECK(hat.components[1].c1 == doctest::Approx(3.2));
    CHECK(hat.components[1].radius == doctest::Approx(1.1));
    CHECK(hat.components[1].amp == Complex(0.6, 0.3));
    CHECK(hat.components[2].c1 == doctest::Approx(2.6));

    // Involution.
    TestFunction back = cpt_partner(hat);
    for (int a : {1, 2}) {
        CHECK(back.components[a].c0 == doctest::Approx(f.components[a].c0));
        CHECK(back.components[a].c1 == doctest::Approx(f.components[a].c1));
        CHECK(back.components[a].amp == f.components[a].amp);
    }

    // Left-wedge support maps to right-wedge support, including translations.
    for (double t1 : {0.0, -1.5, 2.0}) {
        Wedge wl{WedgeSide::Left, 0.3, t1};
        Wedge wr{WedgeSide::Right, -0.3, -t1};
        TestFunction probe;
        probe.N = 3;
        probe.components[1] =
            BumpComponent{0.3 + 0.7, t1 - 3.0, 0.8, Complex(1.0, 0.0)};
        REQUIRE(wedge_support_check(probe, wl));
        CHECK(wedge_support_check(cpt_partner(probe), wr));
    }
}

TEST_CASE("point-mass approximation for a narrow bump") {
    BumpComponent narrow{0.5, -4.0, 0.01, Complex(1.0, 0.0)};
    // Total integral of the bump: quadrature of the transform machinery at a
    // rapidity where the phase is essentially constant over the tiny disc.
    for (Complex z : {Complex(0.3, 0.2), Complex(-1.0, 0.5), Complex(2.0, 0.0)}) {
        Complex p0 = std::cosh(z), p1 = std::sinh(z);
        Complex got = onshell_transform(narrow, 1.0, +1, z);
        // 0.4665... is the unit-disc integral of exp(-1/(1-rho^2)).
        Complex approx = 0.46651239317833015 * 0.01 * 0.01 / (2.0 * kPi) *
                         std::exp(Complex(0.0, 1.0) * (p0 * 0.5 - p1 * (-4.0)));
        CHECK(std::abs(got - approx) < 1e-3 * std::abs(approx));
    }
}

TEST_CASE("transform linearity and zero function") {
    BumpComponent b{0.2, -2.6, 0.9, Complex(1.0, 0.0)};
    BumpComponent zero = b;
    zero.amp = Complex(0.0, 0.0);
    Complex z(0.7, 0.4);
    CHECK(onshell_transform(zero, 1.0, +1, z) == Complex(0.0, 0.0));

    Complex base = onshell_transform(b, 1.0, +1, z);
    for (Complex a : {Complex(2.0, 0.0), Complex(-0.7, 1.3)}) {
        BumpComponent scaled = b;
        scaled.amp = a;
        Complex got = onshell_transform(scaled, 1.0, +1, z);
        CHECK(std::abs(got - a * base) < 1e-12 * std::abs(a * base));
    }
    // Amplitudes combine additively on a shared disc.
    BumpComponent b1 = b, b2 = b, bsum = b;
    b1.amp = Complex(0.4, -1.1);
    b2.amp = Complex(-2.2, 0.5);
    bsum.amp = b1.amp + b2.amp;
    Complex lhs = onshell_transform(bsum, 1.0, -1, z);
    Complex rhs = onshell_transform(b1, 1.0, -1, z) +
                  onshell_transform(b2, 1.0, -1, z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("crossing relation F+(z - i pi) = F-(z)") {
    BumpComponent b{-0.1, 2.7, 1.0, Complex(0.8, 0.2)};
    for (Complex z : {Complex(0.4, 0.3), Complex(-0.7, 0.1), Complex(1.2, -0.2)}) {
        Complex up = onshell_transform(b, 1.0, +1, z + Complex(0.0, kPi));
        Complex dn = onshell_transform(b, 1.0, +1, z - Complex(0.0, kPi));
        Complex ref = onshell_transform(b, 1.0, -1, z);
        CHECK(std::abs(up - ref) < 1e-8 * std::abs(ref));
        CHECK(std::abs(dn - ref) < 1e-8 * std::abs(ref));
    }
}

TEST_CASE("numerical entirety on nested contours") {
    BumpComponent b{0.2, -2.6, 0.9, Complex(1.0, 0.0)};
    Complex center(0.4, 0.3);
    for (double radius : {0.5, 1.0}) {
        Complex acc(0.0, 0.0);
        int M = 64;
        for (int k = 0; k < M; ++k) {
            double phi = 2.0 * kPi * k / M;
            Complex e = std::exp(Complex(0.0, phi));
            acc += onshell_transform(b, 1.0, +1, center + radius * e) * e;
        }
        acc *= radius / double(M);
        CHECK(std::abs(acc) < 1e-8);
    }
}

TEST_CASE("directional decay of wedge transforms") {
    // For a left-wedge f: f^+ decays upward, f^- decays downward.
    // For a right-wedge g: g^+ decays downward, g^- decays upward.
    BumpComponent f{0.2, -2.6, 0.9, Complex(1.0, 0.0)};
    BumpComponent g{-0.1, 2.7, 1.0, Complex(0.8, 0.2)};
    double th = 0.3;
    double prev_fp = 1e300, prev_fm = 1e300, prev_gp = 1e300, prev_gm = 1e300;
    for (double lam : {0.15, 0.45, 0.75, 1.05, 1.35}) {
        double fp = std::abs(onshell_transform(f, 1.0, +1, Complex(th, lam)));
        double fm = std::abs(onshell_transform(f, 1.0, -1, Complex(th, -lam)));
        double gp = std::abs(onshell_transform(g, 1.0, +1, Complex(th, -lam)));
        double gm = std::abs(onshell_transform(g, 1.0, -1, Complex(th, lam)));
        CHECK(fp < prev_fp);
        CHECK(fm < prev_fm);
        CHECK(gp < prev_gp);
        CHECK(gm < prev_gm);
        prev_fp = fp;
        prev_fm = fm;
        prev_gp = gp;
        prev_gm = gm;
    }
    // Boundedness through the strip on a compact grid.
    for (double t : {-2.0, 0.0, 2.0})
        for (double lam : {0.3, 1.2, 2.1, 2.9}) {
            double v = std::abs(onshell_transform(f, 1.0, +1, Complex(t, lam)));
            CHECK(std::isfinite(v));
            CHECK(v < 1.0);
        }
}

TEST_CASE("transforms through the CPT partner") {
    SMatrixModel m = build_zn_model(3, 1.0);
    TestFunction g = right_pair();
    TestFunction hat = cpt_partner(g);
    for (int a : {1, 2}) {
        for (Complex z : {Complex(0.5, 0.2), Complex(-1.1, 0.8)}) {
            for (int s : {+1, -1}) {
                Complex lhs = onshell_transform(hat, m.spectrum, a, s, z);
                Complex rhs = std::conj(
                    onshell_transform(g, m.spectrum, 3 - a, s, std::conj(z)));
                CHECK(std::abs(lhs - rhs) < 1e-12 * (std::abs(lhs) + 1e-30));
            }
        }
    }
}

TEST_CASE("extreme arguments: exact zero and range error") {
    BumpComponent f{0.2, -2.6, 0.9, Complex(1.0, 0.0)};
    // Deep in the decay direction the envelope bound drops below anything a
    // double can resolve against the rest of the pipeline; return exact zero.
    CHECK(onshell_transform(f, 1.0, +1, Complex(6.7, 1.3)) == Complex(0.0, 0.0));
    CHECK(onshell_transform(f, 1.0, -1, Complex(6.7, -1.3)) ==
          Complex(0.0, 0.0));
    // Deep in the growth direction the value itself exceeds double range.
    BumpComponent g{-0.3, -3.2, 1.1, Complex(0.6, -0.3)};
    CHECK_THROWS_AS(onshell_transform(g, 1.0, -1, Complex(-6.2, 0.9)),
                    QuadratureError);
}

TEST_CASE("onshell evaluator wrapper and memoization") {
    SMatrixModel m = build_zn_model(3, 1.0);
    TestFunction f = left_pair();
    OnShellFunction fp = make_onshell(f, m.spectrum, 1, +1);
    CHECK(fp.type() == 1);
    CHECK(fp.sign() == +1);
    Complex z(0.9, 0.1);
    Complex v1 = fp(z);
    Complex v2 = fp(z);  // memoized path
    CHECK(v1 == v2);
    CHECK(std::abs(v1 - onshell_transform(f, m.spectrum, 1, +1, z)) == 0.0);

    TestFunction missing;
    missing.N = 3;
    CHECK_THROWS_AS(make_onshell(missing, m.spectrum, 1, +1), DependencyMissing);
    CHECK_THROWS_AS(onshell_transform(missing, m.spectrum, 1, +1, z),
                    DependencyMissing);

    BumpComponent bad{0.0, -3.0, -1.0, Complex(1.0, 0.0)};
    CHECK_THROWS_AS(onshell_transform(bad, 1.0, +1, z), DomainError);
    BumpComponent ok{0.0, -3.0, 1.0, Complex(1.0, 0.0)};
    CHECK_THROWS_AS(onshell_transform(ok, -1.0, +1, z), DomainError);
    CHECK_THROWS_AS(onshell_transform(ok, 1.0, 0, z), DomainError);
}
