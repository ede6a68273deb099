#pragma once

#include <map>
#include <memory>
#include <unordered_map>

#include "znwedge/kinematics.hpp"
#include "znwedge/types.hpp"

namespace znwedge {

enum class WedgeSide { Left, Right };

struct Wedge {
    WedgeSide side = WedgeSide::Right;
    double t0 = 0.0;  // translation, time component
    double t1 = 0.0;  // translation, space component
};

// amp * exp(-1 / (1 - |x - c|^2 / r^2)) on the open disc, zero outside.
struct BumpComponent {
    double c0 = 0.0;
    double c1 = 0.0;
    double radius = 0.0;
    Complex amp{0.0, 0.0};
};

struct TestFunction {
    int N = 0;
    std::map<int, BumpComponent> components;  // keyed by particle type
};

// Smallest over components of (distance from disc center to the nearer wedge
// boundary ray) - radius. Positive iff every support disc lies strictly
// inside the wedge. Empty function gives +infinity.
double wedge_margin(const TestFunction& f, const Wedge& w);
bool wedge_support_check(const TestFunction& f, const Wedge& w);

// Component alpha of the result at x is conj(component N-alpha of f at -x).
TestFunction cpt_partner(const TestFunction& f);

// (1/2pi) Int f_a(x) exp(sign i p(zeta).x) d2x with p.x = p0 x0 - p1 x1 and
// p = (m cosh zeta, m sinh zeta). Entire in zeta; tensor Gauss-Legendre over
// the support disc with adaptive order doubling (24..768). Throws
// QuadratureError with the achieved estimate if orders stop agreeing.
Complex onshell_transform(const BumpComponent& b, double mass, int sign,
                          Complex zeta);
Complex onshell_transform(const TestFunction& f, const MassSpectrum& spectrum,
                          int alpha, int sign, Complex zeta);

// Evaluator wrapper; copies share one memo table, value semantics otherwise.
class OnShellFunction {
  public:
    OnShellFunction() = default;
    OnShellFunction(BumpComponent bump, double mass, int sign, int type);

    Complex operator()(Complex zeta) const;
    int sign() const { return sign_; }
    int type() const { return type_; }
    const BumpComponent& bump() const { return bump_; }
    double mass() const { return mass_; }

  private:
    struct KeyHash {
        size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
            return std::hash<std::uint64_t>()(k.first * 1000003u ^ k.second);
        }
    };
    BumpComponent bump_;
    double mass_ = 0.0;
    int sign_ = +1;
    int type_ = 0;
    std::shared_ptr<std::unordered_map<std::pair<std::uint64_t, std::uint64_t>,
                                       Complex, KeyHash>>
        memo_;
};

OnShellFunction make_onshell(const TestFunction& f, const MassSpectrum& spectrum,
                             int alpha, int sign);

}  // namespace znwedge
