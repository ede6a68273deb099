#include "znwedge/testfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include "znwedge/quadrature.hpp"

namespace znwedge {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double disc_depth(const BumpComponent& b, const Wedge& w) {
    double dx0 = b.c0 - w.t0;
    double dx1 = b.c1 - w.t1;
    double toward = (w.side == WedgeSide::Right) ? dx1 : -dx1;
    return (toward - std::abs(dx0)) / kSqrt2;
}

// Tensor grid restricted to the unit disc: per-row contiguous column range
// and flattened w_i * w_j * bump values. Independent of center and radius.
struct UnitGrid {
    std::vector<double> x;       // Gauss-Legendre nodes on [-1, 1]
    std::vector<int> jlo, jhi;   // per-row in-disc column range
    std::vector<int> offset;     // row start into cells
    std::vector<double> cells;   // w_i * w_j * exp(-1/(1 - x_i^2 - x_j^2))
};

const UnitGrid& unit_grid(int n) {
    static std::map<int, UnitGrid> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const QuadratureRule& gl = gauss_legendre(n);
    UnitGrid g;
    g.x = gl.nodes;
    g.jlo.assign(n, 0);
    g.jhi.assign(n, 0);
    g.offset.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        double xi2 = g.x[i] * g.x[i];
        int lo = n, hi = 0;
        for (int j = 0; j < n; ++j) {
            if (xi2 + g.x[j] * g.x[j] < 1.0) {
                lo = std::min(lo, j);
                hi = std::max(hi, j + 1);
            }
        }
        g.jlo[i] = std::min(lo, hi);
        g.jhi[i] = hi;
        g.offset[i + 1] = g.offset[i] + (g.jhi[i] - g.jlo[i]);
    }
    g.cells.resize(g.offset[n]);
    for (int i = 0; i < n; ++i) {
        double xi2 = g.x[i] * g.x[i];
        for (int j = g.jlo[i]; j < g.jhi[i]; ++j) {
            double s = xi2 + g.x[j] * g.x[j];
            double v = s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
            g.cells[g.offset[i] + (j - g.jlo[i])] = gl.weights[i] * gl.weights[j] * v;
        }
    }
    return cache.emplace(n, std::move(g)).first->second;
}

// Integral of the unit bump over the unit disc.
double unit_bump_mass() {
    static double value = [] {
        const UnitGrid& g = unit_grid(96);
        double t = 0.0;
        for (double c : g.cells) t += c;
        return t;
    }();
    return value;
}

// Fixed-order evaluation. All per-axis exponentials are recentered to their
// in-disc maximum, so nothing overflows; the scale is restored in log space.
Complex transform_fixed(const BumpComponent& b, double mass, int sign,
                        Complex zeta, int n) {
    const UnitGrid& g = unit_grid(n);
    Complex p0 = mass * std::cosh(zeta);
    Complex p1 = mass * std::sinh(zeta);
    double s = double(sign);
    // Re of the cell exponent is D + alpha x_i + beta y_j.
    double a0 = -s * p0.imag(), a1 = s * p1.imag();
    double alpha = b.radius * a0, beta = b.radius * a1;
    double D = a0 * b.c0 + a1 * b.c1;
    double phr = s * p0.real() * b.radius;   // row phase rate
    double phc = -s * p1.real() * b.radius;  // column phase rate
    double ph0 = s * (p0.real() * b.c0 - p1.real() * b.c1);

    std::vector<Complex> row(n), col(n);
    for (int i = 0; i < n; ++i) {
        row[i] = std::exp(Complex(alpha * g.x[i] - std::abs(alpha), phr * g.x[i]));
        col[i] = std::exp(Complex(beta * g.x[i] - std::abs(beta), phc * g.x[i]));
    }
    Complex sum(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* w = g.cells.data() + g.offset[i];
        Complex acc(0.0, 0.0);
        for (int j = g.jlo[i]; j < g.jhi[i]; ++j) acc += w[j - g.jlo[i]] * col[j];
        sum += row[i] * acc;
    }
    double mag = std::abs(sum);
    if (mag == 0.0) return Complex(0.0, 0.0);
    double expo = D + std::abs(alpha) + std::abs(beta) + std::log(mag);
    if (expo < -707.0) return Complex(0.0, 0.0);
    Complex unit = sum / mag;
    return b.amp * (b.radius * b.radius / (2.0 * kPi)) * std::exp(expo) * unit *
           std::exp(Complex(0.0, ph0));
}

}  // namespace

double wedge_margin(const TestFunction& f, const Wedge& w) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& [type, b] : f.components)
        margin = std::min(margin, disc_depth(b, w) - b.radius);
    return margin;
}

bool wedge_support_check(const TestFunction& f, const Wedge& w) {
    return wedge_margin(f, w) > 0.0;
}

TestFunction cpt_partner(const TestFunction& f) {
    if (f.N < 3) throw DomainError("cpt_partner: test function has no model rank");
    TestFunction out;
    out.N = f.N;
    for (const auto& [type, b] : f.components) {
        out.components[f.N - type] =
            BumpComponent{-b.c0, -b.c1, b.radius, std::conj(b.amp)};
    }
    return out;
}

Complex onshell_transform(const BumpComponent& b, double mass, int sign,
                          Complex zeta) {
    if (!(mass > 0.0)) throw DomainError("onshell_transform: mass must be positive");
    if (!(b.radius > 0.0))
        throw DomainError("onshell_transform: bump radius must be positive");
    if (sign != 1 && sign != -1)
        throw DomainError("onshell_transform: sign must be +1 or -1");
    if (std::abs(b.amp) == 0.0) return Complex(0.0, 0.0);

    Complex p0 = mass * std::cosh(zeta);
    Complex p1 = mass * std::sinh(zeta);
    double s = double(sign);
    double a0 = -s * p0.imag(), a1 = s * p1.imag();
    double maxRe = a0 * b.c0 + a1 * b.c1 + b.radius * std::hypot(a0, a1);
    double logB = maxRe + std::log(std::abs(b.amp) * unit_bump_mass() *
                                   b.radius * b.radius / (2.0 * kPi));
    if (logB < -575.0) return Complex(0.0, 0.0);  // |result| below 1e-250
    if (maxRe > 700.0)
        throw QuadratureError(
            "onshell_transform: transform magnitude exceeds double range");
    double B = std::exp(logB);

    Complex prev = transform_fixed(b, mass, sign, zeta, 24);
    double achieved = std::numeric_limits<double>::infinity();
    for (int n = 48; n <= 768; n *= 2) {
        Complex cur = transform_fixed(b, mass, sign, zeta, n);
        double diff = std::abs(cur - prev);
        if (diff <= 1e-10 * std::abs(cur) + 3e-9 * B) return cur;
        achieved = diff / std::max(std::abs(cur), B * 1e-300);
        prev = cur;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "onshell_transform: no order agreement at zeta=(%.6g,%.6g), "
                  "achieved relative estimate %.3e",
                  zeta.real(), zeta.imag(), achieved);
    throw QuadratureError(msg);
}

Complex onshell_transform(const TestFunction& f, const MassSpectrum& spectrum,
                          int alpha, int sign, Complex zeta) {
    auto it = f.components.find(alpha);
    if (it == f.components.end())
        throw DependencyMissing("onshell_transform: no component for this type");
    return onshell_transform(it->second, spectrum.mass(alpha), sign, zeta);
}

OnShellFunction::OnShellFunction(BumpComponent bump, double mass, int sign,
                                 int type)
    : bump_(bump),
      mass_(mass),
      sign_(sign),
      type_(type),
      memo_(std::make_shared<
            std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Complex,
                               KeyHash>>()) {}

Complex OnShellFunction::operator()(Complex zeta) const {
    if (!memo_) throw Error("OnShellFunction: empty");
    std::pair<std::uint64_t, std::uint64_t> key{
        std::bit_cast<std::uint64_t>(zeta.real()),
        std::bit_cast<std::uint64_t>(zeta.imag())};
    auto it = memo_->find(key);
    if (it != memo_->end()) return it->second;
    Complex v = onshell_transform(bump_, mass_, sign_, zeta);
    memo_->emplace(key, v);
    return v;
}

OnShellFunction make_onshell(const TestFunction& f, const MassSpectrum& spectrum,
                             int alpha, int sign) {
    auto it = f.components.find(alpha);
    if (it == f.components.end())
        throw DependencyMissing("make_onshell: no component for this type");
    return OnShellFunction(it->second, spectrum.mass(alpha), sign, alpha);
}

}  // namespace znwedge
