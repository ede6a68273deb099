#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "znwedge/smatrix.hpp"

using namespace znwedge;

namespace {

std::vector<double> real_grid(int n, double lo, double hi) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * (i + 0.5) / n);
    return g;
}

const StripPole* pole_near(const SComponent& c, double im) {
    for (const StripPole& p : c.poles())
        if (std::abs(p.location - Complex(0.0, im)) < 1e-8) return &p;
    return nullptr;
}

}  // namespace

TEST_CASE("s11 closed-form values") {
    CHECK(std::abs(s11(3, Complex(0.0, 0.0)) - Complex(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(s11(3, Complex(0.0, kPi)) - Complex(1.0, 0.0)) < 1e-14);
    CHECK_THROWS_AS(s11(4, Complex(0.0, kPi / 2.0)), PoleProximity);
    CHECK_THROWS_AS(s11(2, Complex(0.3, 0.1)), Error);

    // Unitarity of the closed form; crossing pairs it with S_{1,N-1} and is
    // covered by the model-level checks below.
    for (double t : real_grid(25, -4.0, 4.0)) {
        Complex z(t, 0.0);
        CHECK(std::abs(s11(5, z) * s11(5, -z) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(s11(5, z)) - 1.0) < 1e-12);
    }
}

TEST_CASE("model construction, unitarity and crossing checks") {
    for (int N : {3, 4, 5}) {
        SMatrixModel model = build_zn_model(N, 1.0);
        REQUIRE(model.N == N);
        // One component per unordered pair.
        CHECK(int(model.components.size()) == (N - 1) * N / 2);

        auto grid = real_grid(100, -5.0, 5.0);
        for (const auto& [key, comp] : model.components) {
            CheckReport u = check_unitarity(comp, grid);
            CHECK(u.pass);
            CHECK(u.max_deviation < 1e-10);
        }
        std::vector<Complex> cgrid;
        for (double x : {-3.0, -1.2, 0.1, 1.4, 2.8})
            for (double y : {0.3, 1.1, 1.9, 2.7}) cgrid.push_back(Complex(x, y));
        for (int a = 1; a <= N - 1; ++a)
            for (int b = 1; b <= N - 1; ++b) {
                CheckReport cr = check_crossing(model, a, b, cgrid);
                CHECK(cr.pass);
                CHECK(cr.max_deviation < 1e-8);
            }
    }
}

TEST_CASE("charge conjugation symmetry of components") {
    for (int N : {3, 4, 5}) {
        SMatrixModel model = build_zn_model(N, 1.0);
        for (int a = 1; a <= N - 1; ++a)
            for (int b = a; b <= N - 1; ++b) {
                const SComponent& s = model.component(a, b);
                const SComponent& sbar = model.component(N - a, N - b);
                for (Complex z : {Complex(0.8, 0.4), Complex(-1.3, 2.2),
                                  Complex(2.1, 1.0)})
                    CHECK(std::abs(s(z) - sbar(z)) < 1e-10);
            }
    }
}

TEST_CASE("pole table for N=3") {
    SMatrixModel m = build_zn_model(3, 1.0);
    const double r3 = std::sqrt(3.0);

    const SComponent& s11c = m.component(1, 1);
    REQUIRE(s11c.poles().size() == 1);
    const StripPole* p = pole_near(s11c, 2.0 * kPi / 3.0);
    REQUIRE(p != nullptr);
    CHECK(p->channel == 's');
    CHECK(p->order == 1);
    CHECK(std::abs(residue_at(s11c, p->location) - Complex(0.0, r3)) < 1e-9);

    const SComponent& s12c = m.component(1, 2);
    REQUIRE(s12c.poles().size() == 1);
    p = pole_near(s12c, kPi / 3.0);
    REQUIRE(p != nullptr);
    CHECK(p->channel == 't');
    CHECK(std::abs(residue_at(s12c, p->location) - Complex(0.0, -r3)) < 1e-9);

    const SComponent& s22c = m.component(2, 2);
    REQUIRE(s22c.poles().size() == 1);
    p = pole_near(s22c, 2.0 * kPi / 3.0);
    REQUIRE(p != nullptr);
    CHECK(p->channel == 's');
    CHECK(std::abs(residue_at(s22c, p->location) - Complex(0.0, r3)) < 1e-9);
}

TEST_CASE("pole table for N=4 including the double pole of S22") {
    SMatrixModel m = build_zn_model(4, 1.0);

    struct Row {
        int a, b;
        double im;
        char ch;
        double res_im;  // coefficient of 1/(z - p)
        int order;
    };
    const double h = kPi / 4.0;
    std::vector<Row> rows = {
        {1, 1, 2 * h, 's', 2.0, 1},  {1, 2, h, 't', -2.0, 1},
        {1, 2, 3 * h, 's', 2.0, 1},  {1, 3, 2 * h, 't', -2.0, 1},
        {2, 2, 2 * h, '?', 0.0, 2},  {2, 3, h, 't', -2.0, 1},
        {2, 3, 3 * h, 's', 2.0, 1},  {3, 3, 2 * h, 's', 2.0, 1},
    };
    for (const Row& r : rows) {
        const SComponent& c = m.component(r.a, r.b);
        const StripPole* p = pole_near(c, r.im);
        REQUIRE(p != nullptr);
        CHECK(p->channel == r.ch);
        CHECK(p->order == r.order);
        Complex res = residue_at(c, p->location);
        CHECK(std::abs(res - Complex(0.0, r.res_im)) < 1e-8);
    }
    CHECK(m.component(1, 1).poles().size() == 1);
    CHECK(m.component(1, 2).poles().size() == 2);
    CHECK(m.component(1, 3).poles().size() == 1);
    CHECK(m.component(2, 2).poles().size() == 1);
    CHECK(m.component(3, 3).poles().size() == 1);
}

TEST_CASE("pole table for N=5") {
    SMatrixModel m = build_zn_model(5, 1.0);
    const double r1 = 2.0 * std::sin(2.0 * kPi / 5.0);  // 1.902113032590...
    const double r2 = 3.077683537175253;
    const double h = kPi / 5.0;

    auto res_im = [&](int a, int b, double im) {
        const SComponent& c = m.component(a, b);
        const StripPole* p = pole_near(c, im);
        REQUIRE(p != nullptr);
        return residue_at(c, p->location).imag();
    };
    CHECK(res_im(1, 1, 2 * h) == doctest::Approx(r1).epsilon(1e-9));
    CHECK(res_im(1, 2, h) == doctest::Approx(-r1).epsilon(1e-9));
    CHECK(res_im(1, 2, 3 * h) == doctest::Approx(r2).epsilon(1e-9));
    CHECK(res_im(1, 3, 2 * h) == doctest::Approx(-r2).epsilon(1e-9));
    CHECK(res_im(1, 3, 4 * h) == doctest::Approx(r1).epsilon(1e-9));
    CHECK(res_im(1, 4, 3 * h) == doctest::Approx(-r1).epsilon(1e-9));
    CHECK(m.component(1, 4).poles().size() == 1);
    // Residues stay purely imaginary (hermitian analyticity).
    for (const auto& [key, comp] : m.components)
        for (const StripPole& p : comp.poles())
            CHECK(std::abs(residue_at(comp, p.location).real()) < 1e-9);
}

TEST_CASE("locate_poles agrees with the registered tables") {
    StripRegion region;
    for (int N : {3, 4, 5}) {
        SMatrixModel m = build_zn_model(N, 1.0);
        for (const auto& [key, comp] : m.components) {
            std::vector<Complex> found = locate_poles(comp, region);
            REQUIRE(found.size() == comp.poles().size());
            for (size_t i = 0; i < found.size(); ++i) {
                CHECK(std::abs(found[i] - comp.poles()[i].location) < 1e-8);
            }
        }
    }
}

TEST_CASE("bootstrap path independence for S13 at N=4") {
    SMatrixModel m = build_zn_model(4, 1.0);
    // (1,2) -> 3 and (2,1) -> 3 give the same component through different
    // shift assignments.
    SComponent via12 = bootstrap_component(m, 1, 1, 2);
    SComponent via21 = bootstrap_component(m, 1, 2, 1);
    const SComponent& direct = m.component(1, 3);
    for (Complex z : {Complex(0.6, 0.9), Complex(-1.8, 2.4), Complex(0.1, 0.2),
                      Complex(3.0, 1.5)}) {
        CHECK(std::abs(via12(z) - direct(z)) < 1e-10);
        CHECK(std::abs(via21(z) - direct(z)) < 1e-10);
    }
    CHECK_THROWS_AS(bootstrap_component(m, 1, 2, 2), Error);  // 2+2 = 0 mod 4
}

TEST_CASE("guarded evaluation near poles") {
    SMatrixModel m = build_zn_model(3, 1.0);
    const SComponent& c = m.component(1, 1);
    CHECK_THROWS_AS(c(Complex(0.0, 2.0 * kPi / 3.0)), PoleProximity);
    CHECK_NOTHROW(c(Complex(1e-3, 2.0 * kPi / 3.0)));
    // Removable 0/0 point of the bootstrap product evaluates finitely.
    const SComponent& s22c = m.component(2, 2);
    REQUIRE(s22c.removable_points().size() == 1);
    Complex v = s22c.eval_for_scan(Complex(0.0, 0.0));
    CHECK(std::isfinite(v.real()));
    CHECK(std::abs(v) > 1e-3);

    CHECK_THROWS_AS(m.component(1, 7), DependencyMissing);
    CHECK_THROWS_AS(residue_at(c, Complex(0.0, 1.0)), ContourConflict);
}
