#include "znwedge/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <utility>

#include "json.hpp"
#include "znwedge/quadrature.hpp"

namespace znwedge {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// Transforms are validated on |Re zeta| <= 6.5; real-line quadrature of
// integrands containing them stays inside that interval.
constexpr double kOnShellHalfWidth = 6.5;

WfPtr make_node(WfNode n) { return std::make_shared<const WfNode>(std::move(n)); }

Complex int_pow(Complex z, int k) {
    Complex r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

WfPtr wf_gauss(Complex coeff, double width, double center, int power) {
    return wf_gauss_sum({GaussTerm{coeff, width, center, power}});
}

WfPtr wf_gauss_sum(std::vector<GaussTerm> terms) {
    for (const auto& t : terms)
        if (!(t.width > 0.0) || t.power < 0)
            throw DomainError("wf_gauss_sum: width must be positive, power nonnegative");
    WfNode n;
    n.kind = WfNode::Kind::GaussSum;
    n.gauss = std::move(terms);
    return make_node(std::move(n));
}

WfPtr wf_onshell(OnShellFunction f) {
    WfNode n;
    n.kind = WfNode::Kind::OnShell;
    n.onshell = std::move(f);
    return make_node(std::move(n));
}

WfPtr wf_shift(WfPtr child, Complex offset) {
    WfNode n;
    n.kind = WfNode::Kind::Shift;
    n.offset = offset;
    n.children = {std::move(child)};
    return make_node(std::move(n));
}

WfPtr wf_scale(Complex factor, WfPtr child) {
    WfNode n;
    n.kind = WfNode::Kind::Scale;
    n.factor = factor;
    n.children = {std::move(child)};
    return make_node(std::move(n));
}

WfPtr wf_conj(WfPtr child) {
    WfNode n;
    n.kind = WfNode::Kind::Conj;
    n.children = {std::move(child)};
    return make_node(std::move(n));
}

WfPtr wf_sum(std::vector<WfPtr> parts) {
    if (parts.size() == 1) return parts.front();
    WfNode n;
    n.kind = WfNode::Kind::Sum;
    n.children = std::move(parts);
    return make_node(std::move(n));
}

WfPtr wf_prod(std::vector<WfPtr> parts) {
    if (parts.size() == 1) return parts.front();
    WfNode n;
    n.kind = WfNode::Kind::Prod;
    n.children = std::move(parts);
    return make_node(std::move(n));
}

WfPtr wf_sfactor(const SMatrixModel& model, int a, int b, Complex offset) {
    WfNode n;
    n.kind = WfNode::Kind::SFactor;
    n.sf_a = a;
    n.sf_b = b;
    n.sfac = &model.component(a, b);
    n.offset = offset;
    return make_node(std::move(n));
}

Complex wf_eval(const WfPtr& w, Complex z) {
    switch (w->kind) {
        case WfNode::Kind::GaussSum: {
            Complex acc(0.0, 0.0);
            for (const auto& t : w->gauss) {
                Complex d = z - t.center;
                acc += t.coeff * std::exp(-t.width * d * d) * int_pow(z, t.power);
            }
            return acc;
        }
        case WfNode::Kind::OnShell:
            return w->onshell(z);
        case WfNode::Kind::Shift:
            return wf_eval(w->children[0], z + w->offset);
        case WfNode::Kind::Scale:
            if (w->factor == Complex(0.0, 0.0)) return {0.0, 0.0};
            return w->factor * wf_eval(w->children[0], z);
        case WfNode::Kind::Conj:
            return std::conj(wf_eval(w->children[0], std::conj(z)));
        case WfNode::Kind::Sum: {
            Complex acc(0.0, 0.0);
            for (const auto& c : w->children) acc += wf_eval(c, z);
            return acc;
        }
        case WfNode::Kind::Prod: {
            Complex acc(1.0, 0.0);
            for (const auto& c : w->children) acc *= wf_eval(c, z);
            return acc;
        }
        case WfNode::Kind::SFactor:
            return (*w->sfac)(z + w->offset);
        case WfNode::Kind::Contraction: {
            Complex acc(0.0, 0.0);
            if (w->sfac) {
                for (size_t i = 0; i < w->nodes.size(); ++i)
                    acc += w->kernel[i] * (*w->sfac)(z - w->nodes[i]);
            } else {
                for (const auto& k : w->kernel) acc += k;
            }
            return acc;
        }
    }
    throw Error("wf_eval: corrupt node");
}

std::vector<Complex> wf_singularities(const WfPtr& w) {
    std::vector<Complex> out;
    switch (w->kind) {
        case WfNode::Kind::GaussSum:
        case WfNode::Kind::OnShell:
            break;
        case WfNode::Kind::Shift:
            for (Complex s : wf_singularities(w->children[0]))
                out.push_back(s - w->offset);
            break;
        case WfNode::Kind::Scale:
            return wf_singularities(w->children[0]);
        case WfNode::Kind::Conj:
            for (Complex s : wf_singularities(w->children[0]))
                out.push_back(std::conj(s));
            break;
        case WfNode::Kind::Sum:
        case WfNode::Kind::Prod:
            for (const auto& c : w->children)
                for (Complex s : wf_singularities(c)) out.push_back(s);
            break;
        case WfNode::Kind::SFactor:
            for (const auto& p : w->sfac->poles())
                out.push_back(p.location - w->offset);
            break;
        case WfNode::Kind::Contraction:
            // z - u_i hits a pole p along a real interval of z; only the
            // imaginary part is sharp, so report a representative point.
            if (w->sfac)
                for (const auto& p : w->sfac->poles())
                    out.push_back(Complex(0.0, p.location.imag()));
            break;
    }
    return out;
}

double wf_pole_margin(const WfPtr& w) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex s : wf_singularities(w)) d = std::min(d, std::abs(s.imag()));
    return d;
}

FockVector fock_vacuum(int N) {
    FockVector v;
    v.N = N;
    v.c0 = Complex(1.0, 0.0);
    return v;
}

FockVector fock_one_particle(int N, int type, WfPtr wf) {
    if (type < 1 || type > N - 1)
        throw DomainError("fock_one_particle: type out of range");
    FockVector v;
    v.N = N;
    v.one[type] = std::move(wf);
    return v;
}

FockVector fock_add(const FockVector& x, const FockVector& y) {
    if (x.N != y.N) throw DomainError("fock_add: mismatched N");
    FockVector v = x;
    v.c0 += y.c0;
    for (const auto& [t, w] : y.one) {
        auto it = v.one.find(t);
        if (it == v.one.end())
            v.one[t] = w;
        else
            it->second = wf_sum({it->second, w});
    }
    v.two.insert(v.two.end(), y.two.begin(), y.two.end());
    v.truncation_flagged = v.truncation_flagged || y.truncation_flagged;
    return v;
}

FockVector fock_scale(Complex c, const FockVector& x) {
    FockVector v = x;
    v.c0 *= c;
    for (auto& [t, w] : v.one) w = wf_scale(c, w);
    for (auto& term : v.two) term.weight *= c;
    return v;
}

namespace {

Complex term2_value(const Term2& t, Complex t1, Complex t2) {
    Complex v = t.weight * wf_eval(t.fa, t1) * wf_eval(t.fb, t2);
    if (t.sfac) v *= (*t.sfac)(t2 - t1);
    return v;
}

}  // namespace

Complex two_component(const FockVector& v, int a, int b, Complex t1, Complex t2) {
    Complex acc(0.0, 0.0);
    for (const auto& t : v.two)
        if (t.a == a && t.b == b) acc += term2_value(t, t1, t2);
    return acc;
}

double s_symmetry_residual(const SMatrixModel& model, const FockVector& v,
                           const std::vector<double>& grid) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& t : v.two) {
        pairs.insert({t.a, t.b});
        pairs.insert({t.b, t.a});
    }
    double worst = 0.0;
    for (auto [a, b] : pairs) {
        const SComponent& s = model.component(a, b);
        for (double t1 : grid)
            for (double t2 : grid) {
                Complex lhs = two_component(v, a, b, t1, t2);
                Complex rhs = s(Complex(t2 - t1, 0.0)) *
                              two_component(v, b, a, t2, t1);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    }
    return worst;
}

FockVector apply_j(const SMatrixModel& model, const FockVector& v) {
    FockVector out;
    out.N = v.N;
    out.c0 = std::conj(v.c0);
    out.truncation_flagged = v.truncation_flagged;
    for (const auto& [t, w] : v.one) {
        int tb = antiparticle(v.N, t);
        WfPtr node = wf_conj(w);
        auto it = out.one.find(tb);
        if (it == out.one.end())
            out.one[tb] = node;
        else
            it->second = wf_sum({it->second, node});
    }
    for (const auto& term : v.two) {
        Term2 jt;
        jt.a = antiparticle(v.N, term.b);
        jt.b = antiparticle(v.N, term.a);
        jt.fa = wf_conj(term.fb);
        jt.fb = wf_conj(term.fa);
        jt.sfac = term.sfac ? &model.component(jt.a, jt.b) : nullptr;
        jt.weight = std::conj(term.weight);
        out.two.push_back(std::move(jt));
    }
    return out;
}

FockVector zf_create(const SMatrixModel& model, const OneParticleData& h,
                     const FockVector& psi, int keep_max) {
    FockVector out;
    out.N = psi.N;
    out.truncation_flagged = psi.truncation_flagged;
    for (const auto& [c, hw] : h) {
        if (c < 1 || c > psi.N - 1)
            throw DomainError("zf_create: particle type out of range");
        if (keep_max >= 1 && psi.c0 != Complex(0.0, 0.0)) {
            WfPtr node = wf_scale(psi.c0, hw);
            auto it = out.one.find(c);
            if (it == out.one.end())
                out.one[c] = node;
            else
                it->second = wf_sum({it->second, node});
        }
        if (keep_max >= 2) {
            for (const auto& [a, pw] : psi.one) {
                out.two.push_back(Term2{c, a, hw, pw, nullptr, kInvSqrt2});
                out.two.push_back(
                    Term2{a, c, pw, hw, &model.component(a, c), kInvSqrt2});
            }
        }
    }
    // A two-particle input would produce a three-particle component; dropping
    // it at the hard cap is flagged, an explicit lower projection is not.
    if (!psi.two.empty() && keep_max >= 2 && !h.empty())
        out.truncation_flagged = true;
    return out;
}

FockVector zf_annihilate(const SMatrixModel&, const OneParticleData& h,
                         const FockVector& psi, const QuadSpec& q) {
    const QuadratureRule& gl = gauss_legendre(q.n);
    std::vector<double> u(q.n), uw(q.n);
    for (int i = 0; i < q.n; ++i) {
        u[i] = q.half_width * gl.nodes[i];
        uw[i] = q.half_width * gl.weights[i];
    }

    FockVector out;
    out.N = psi.N;
    out.truncation_flagged = psi.truncation_flagged;
    out.c0 = Complex(0.0, 0.0);

    for (const auto& [c, hw] : h) {
        auto it = psi.one.find(c);
        if (it == psi.one.end()) continue;
        Complex acc(0.0, 0.0);
        for (int i = 0; i < q.n; ++i)
            acc += uw[i] * std::conj(wf_eval(hw, Complex(u[i], 0.0))) *
                   wf_eval(it->second, Complex(u[i], 0.0));
        out.c0 += acc;
    }

    for (const auto& term : psi.two) {
        auto it = h.find(term.a);
        if (it == h.end()) continue;
        std::vector<Complex> kern(q.n);
        for (int i = 0; i < q.n; ++i)
            kern[i] = std::conj(wf_eval(it->second, Complex(u[i], 0.0))) * uw[i] *
                      wf_eval(term.fa, Complex(u[i], 0.0));
        Complex w = std::sqrt(2.0) * term.weight;
        WfPtr node;
        if (term.sfac) {
            WfNode contraction;
            contraction.kind = WfNode::Kind::Contraction;
            contraction.sf_a = term.a;
            contraction.sf_b = term.b;
            contraction.sfac = term.sfac;
            contraction.nodes = u;
            contraction.kernel = std::move(kern);
            node = wf_scale(w, wf_prod({make_node(std::move(contraction)), term.fb}));
        } else {
            Complex scalar(0.0, 0.0);
            for (const auto& k : kern) scalar += k;
            node = wf_scale(w * scalar, term.fb);
        }
        auto jt = out.one.find(term.b);
        if (jt == out.one.end())
            out.one[term.b] = node;
        else
            jt->second = wf_sum({jt->second, node});
    }
    return out;
}

namespace {

OneParticleData phi_create_data(const SMatrixModel& model, const TestFunction& f) {
    OneParticleData h;
    for (const auto& [c, bump] : f.components) {
        (void)bump;
        h[c] = wf_onshell(make_onshell(f, model.spectrum, c, +1));
    }
    return h;
}

// Annihilation of a type-c particle is weighted by f^-_{cbar}; conj(h_c(u))
// at real u must reproduce that, so store its schwarz reflection.
OneParticleData phi_annihilate_data(const SMatrixModel& model,
                                    const TestFunction& f) {
    OneParticleData h;
    for (int c = 1; c <= f.N - 1; ++c) {
        int cb = antiparticle(f.N, c);
        if (f.components.count(cb) == 0) continue;
        h[c] = wf_conj(wf_onshell(make_onshell(f, model.spectrum, cb, -1)));
    }
    return h;
}

}  // namespace

FockVector apply_phi(const SMatrixModel& model, const TestFunction& f,
                     const FockVector& psi, const QuadSpec& q, int keep_max) {
    if (f.N != psi.N) throw DomainError("apply_phi: mismatched N");
    FockVector created = zf_create(model, phi_create_data(model, f), psi, keep_max);
    FockVector annihilated =
        zf_annihilate(model, phi_annihilate_data(model, f), psi, q);
    return fock_add(created, annihilated);
}

FockVector apply_phi_reflected(const SMatrixModel& model, const TestFunction& g,
                               const FockVector& psi, const QuadSpec& q,
                               int keep_max) {
    return apply_j(model,
                   apply_phi(model, cpt_partner(g), apply_j(model, psi), q, keep_max));
}

FockVector apply_chi_1(const SMatrixModel& model, const FusionTable& table,
                       const TestFunction& f, const FockVector& psi) {
    if (f.N != psi.N) throw DomainError("apply_chi_1: mismatched N");
    if (!psi.two.empty())
        throw DomainError("apply_chi_1: defined on vectors with at most one particle");
    FockVector out;
    out.N = psi.N;
    out.truncation_flagged = psi.truncation_flagged;
    for (const auto& [key, pr] : table.processes) {
        auto it = psi.one.find(pr.beta);
        if (it == psi.one.end()) continue;
        if (f.components.count(pr.alpha) == 0) continue;
        for (Complex s : wf_singularities(it->second)) {
            if (std::abs(s.imag()) <= pr.angles.theta_ba + 1e-12) {
                char msg[160];
                std::snprintf(msg, sizeof(msg),
                              "apply_chi_1: shift by theta_ba=%.6f crosses a "
                              "wavefunction singularity at (%.6f, %.6f)",
                              pr.angles.theta_ba, s.real(), s.imag());
                throw DomainError(msg);
            }
        }
        WfPtr fplus = wf_onshell(make_onshell(f, model.spectrum, pr.alpha, +1));
        WfPtr node = wf_scale(
            Complex(0.0, -1.0) * pr.eta,
            wf_prod({wf_shift(fplus, Complex(0.0, pr.angles.theta_ab)),
                     wf_shift(it->second, Complex(0.0, -pr.angles.theta_ba))}));
        auto jt = out.one.find(pr.gamma);
        if (jt == out.one.end())
            out.one[pr.gamma] = node;
        else
            jt->second = wf_sum({jt->second, node});
    }
    return out;
}

FockVector apply_chi_reflected_1(const SMatrixModel& model,
                                 const FusionTable& table,
                                 const TestFunction& g, const FockVector& psi) {
    return apply_j(
        model, apply_chi_1(model, table, cpt_partner(g), apply_j(model, psi)));
}

namespace {

struct Envelope {
    double width = 0.0;
    double center = 0.0;
    bool onshell = false;
};

Envelope wf_envelope(const WfPtr& w) {
    switch (w->kind) {
        case WfNode::Kind::GaussSum: {
            Envelope e;
            if (w->gauss.empty()) return e;
            const GaussTerm* slowest = &w->gauss.front();
            for (const auto& t : w->gauss)
                if (t.width < slowest->width) slowest = &t;
            // shave the width so polynomial prefactors stay dominated
            e.width = 0.9 * slowest->width;
            e.center = slowest->center;
            return e;
        }
        case WfNode::Kind::OnShell:
            return Envelope{0.0, 0.0, true};
        case WfNode::Kind::SFactor:
        case WfNode::Kind::Contraction:
            return Envelope{0.0, 0.0, false};
        case WfNode::Kind::Shift: {
            Envelope e = wf_envelope(w->children[0]);
            e.center -= w->offset.real();
            return e;
        }
        case WfNode::Kind::Scale:
        case WfNode::Kind::Conj:
            return wf_envelope(w->children[0]);
        case WfNode::Kind::Sum: {
            Envelope e;
            bool first = true;
            for (const auto& c : w->children) {
                Envelope ce = wf_envelope(c);
                e.onshell = e.onshell || ce.onshell;
                if (first || ce.width < e.width) {
                    e.width = ce.width;
                    e.center = ce.center;
                    first = false;
                }
            }
            return e;
        }
        case WfNode::Kind::Prod: {
            Envelope e;
            double wsum = 0.0, csum = 0.0;
            for (const auto& c : w->children) {
                Envelope ce = wf_envelope(c);
                e.onshell = e.onshell || ce.onshell;
                wsum += ce.width;
                csum += ce.width * ce.center;
            }
            e.width = wsum;
            e.center = wsum > 0.0 ? csum / wsum : 0.0;
            return e;
        }
    }
    return Envelope{};
}

Envelope combine(const Envelope& a, const Envelope& b) {
    Envelope e;
    e.width = a.width + b.width;
    e.center = e.width > 0.0 ? (a.width * a.center + b.width * b.center) / e.width
                             : 0.0;
    e.onshell = a.onshell || b.onshell;
    return e;
}

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// level 0..3; Gauss-Hermite matched to the envelope when it is purely
// Gaussian, Gauss-Legendre on the on-shell validity interval otherwise.
AxisRule axis_rule(const Envelope& e, int level) {
    AxisRule r;
    if (!e.onshell && e.width > 0.0) {
        static const int orders[4] = {32, 64, 128, 256};
        const QuadratureRule& gh = gauss_hermite(orders[level]);
        double s = 1.0 / std::sqrt(e.width);
        r.nodes.resize(gh.nodes.size());
        r.weights.resize(gh.nodes.size());
        for (size_t i = 0; i < gh.nodes.size(); ++i) {
            r.nodes[i] = e.center + s * gh.nodes[i];
            r.weights[i] = s * gh.weights[i];
        }
    } else {
        static const int orders[4] = {200, 400, 800, 1600};
        const QuadratureRule& gl = gauss_legendre(orders[level]);
        r.nodes.resize(gl.nodes.size());
        r.weights.resize(gl.nodes.size());
        for (size_t i = 0; i < gl.nodes.size(); ++i) {
            r.nodes[i] = kOnShellHalfWidth * gl.nodes[i];
            r.weights[i] = kOnShellHalfWidth * gl.weights[i];
        }
    }
    return r;
}

template <typename F>
Complex integrate_1d(const F& f, const Envelope& e, double tol) {
    Complex prev(0.0, 0.0);
    for (int level = 0; level < 4; ++level) {
        AxisRule r = axis_rule(e, level);
        Complex cur(0.0, 0.0);
        double sumabs = 0.0;
        for (size_t i = 0; i < r.nodes.size(); ++i) {
            Complex v = r.weights[i] * f(r.nodes[i]);
            cur += v;
            sumabs += std::abs(v);
        }
        if (level > 0 && std::abs(cur - prev) <= tol * std::abs(cur) + 1e-15 * sumabs)
            return cur;
        prev = cur;
    }
    throw QuadratureError("inner_product: 1d quadrature did not converge");
}

template <typename F>
Complex integrate_2d(const F& f, const Envelope& ex, const Envelope& ey,
                     double tol) {
    Complex prev(0.0, 0.0);
    for (int level = 0; level < 4; ++level) {
        AxisRule rx = axis_rule(ex, level);
        AxisRule ry = axis_rule(ey, level);
        Complex cur(0.0, 0.0);
        double sumabs = 0.0;
        for (size_t i = 0; i < rx.nodes.size(); ++i)
            for (size_t j = 0; j < ry.nodes.size(); ++j) {
                Complex v = rx.weights[i] * ry.weights[j] * f(rx.nodes[i], ry.nodes[j]);
                cur += v;
                sumabs += std::abs(v);
            }
        if (level > 0 && std::abs(cur - prev) <= tol * std::abs(cur) + 1e-15 * sumabs)
            return cur;
        prev = cur;
    }
    throw QuadratureError("inner_product: 2d quadrature did not converge");
}

}  // namespace

Complex inner_product(const FockVector& bra, const FockVector& ket, double tol) {
    if (bra.N != ket.N) throw DomainError("inner_product: mismatched N");
    Complex total = std::conj(bra.c0) * ket.c0;

    for (const auto& [t, bw] : bra.one) {
        auto it = ket.one.find(t);
        if (it == ket.one.end()) continue;
        const WfPtr& kw = it->second;
        Envelope e = combine(wf_envelope(bw), wf_envelope(kw));
        total += integrate_1d(
            [&](double x) {
                Complex z(x, 0.0);
                return std::conj(wf_eval(bw, z)) * wf_eval(kw, z);
            },
            e, tol);
    }

    for (const auto& bt : bra.two) {
        for (const auto& kt : ket.two) {
            if (bt.a != kt.a || bt.b != kt.b) continue;
            Envelope ex = combine(wf_envelope(bt.fa), wf_envelope(kt.fa));
            Envelope ey = combine(wf_envelope(bt.fb), wf_envelope(kt.fb));
            total += integrate_2d(
                [&](double x, double y) {
                    Complex t1(x, 0.0), t2(y, 0.0);
                    return std::conj(term2_value(bt, t1, t2)) *
                           term2_value(kt, t1, t2);
                },
                ex, ey, tol);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

using nlohmann::json;

json cplx(Complex z) { return json::array({z.real(), z.imag()}); }

Complex cplx_of(const json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json node_to_json(const WfPtr& w) {
    json j;
    switch (w->kind) {
        case WfNode::Kind::GaussSum: {
            j["kind"] = "gauss_sum";
            json terms = json::array();
            for (const auto& t : w->gauss)
                terms.push_back({{"coeff", cplx(t.coeff)},
                                 {"width", t.width},
                                 {"center", t.center},
                                 {"power", t.power}});
            j["terms"] = std::move(terms);
            break;
        }
        case WfNode::Kind::OnShell: {
            const auto& b = w->onshell.bump();
            j["kind"] = "onshell";
            j["bump"] = {{"c0", b.c0},
                         {"c1", b.c1},
                         {"radius", b.radius},
                         {"amp", cplx(b.amp)}};
            j["mass"] = w->onshell.mass();
            j["sign"] = w->onshell.sign();
            j["type"] = w->onshell.type();
            break;
        }
        case WfNode::Kind::Shift:
            j["kind"] = "shift";
            j["offset"] = cplx(w->offset);
            j["child"] = node_to_json(w->children[0]);
            break;
        case WfNode::Kind::Scale:
            j["kind"] = "scale";
            j["factor"] = cplx(w->factor);
            j["child"] = node_to_json(w->children[0]);
            break;
        case WfNode::Kind::Conj:
            j["kind"] = "conj";
            j["child"] = node_to_json(w->children[0]);
            break;
        case WfNode::Kind::Sum:
        case WfNode::Kind::Prod: {
            j["kind"] = w->kind == WfNode::Kind::Sum ? "sum" : "prod";
            json kids = json::array();
            for (const auto& c : w->children) kids.push_back(node_to_json(c));
            j["children"] = std::move(kids);
            break;
        }
        case WfNode::Kind::SFactor:
            j["kind"] = "sfactor";
            j["a"] = w->sf_a;
            j["b"] = w->sf_b;
            j["offset"] = cplx(w->offset);
            break;
        case WfNode::Kind::Contraction: {
            j["kind"] = "contraction";
            j["a"] = w->sf_a;
            j["b"] = w->sf_b;
            j["has_s"] = w->sfac != nullptr;
            j["nodes"] = w->nodes;
            json kern = json::array();
            for (const auto& k : w->kernel) kern.push_back(cplx(k));
            j["kernel"] = std::move(kern);
            break;
        }
    }
    return j;
}

WfPtr node_from_json(const SMatrixModel& model, const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gauss_sum") {
        std::vector<GaussTerm> terms;
        for (const auto& t : j.at("terms"))
            terms.push_back(GaussTerm{cplx_of(t.at("coeff")),
                                      t.at("width").get<double>(),
                                      t.at("center").get<double>(),
                                      t.at("power").get<int>()});
        return wf_gauss_sum(std::move(terms));
    }
    if (kind == "onshell") {
        const auto& b = j.at("bump");
        BumpComponent bump{b.at("c0").get<double>(), b.at("c1").get<double>(),
                           b.at("radius").get<double>(), cplx_of(b.at("amp"))};
        return wf_onshell(OnShellFunction(bump, j.at("mass").get<double>(),
                                          j.at("sign").get<int>(),
                                          j.at("type").get<int>()));
    }
    if (kind == "shift")
        return wf_shift(node_from_json(model, j.at("child")), cplx_of(j.at("offset")));
    if (kind == "scale")
        return wf_scale(cplx_of(j.at("factor")), node_from_json(model, j.at("child")));
    if (kind == "conj") return wf_conj(node_from_json(model, j.at("child")));
    if (kind == "sum" || kind == "prod") {
        std::vector<WfPtr> kids;
        for (const auto& c : j.at("children")) kids.push_back(node_from_json(model, c));
        return kind == "sum" ? wf_sum(std::move(kids)) : wf_prod(std::move(kids));
    }
    if (kind == "sfactor")
        return wf_sfactor(model, j.at("a").get<int>(), j.at("b").get<int>(),
                          cplx_of(j.at("offset")));
    if (kind == "contraction") {
        WfNode n;
        n.kind = WfNode::Kind::Contraction;
        n.sf_a = j.at("a").get<int>();
        n.sf_b = j.at("b").get<int>();
        if (j.at("has_s").get<bool>()) n.sfac = &model.component(n.sf_a, n.sf_b);
        n.nodes = j.at("nodes").get<std::vector<double>>();
        for (const auto& k : j.at("kernel")) n.kernel.push_back(cplx_of(k));
        return make_node(std::move(n));
    }
    throw DomainError("fock_from_json: unknown node kind '" + kind + "'");
}

}  // namespace

std::string fock_to_json(const FockVector& v) {
    json j;
    j["N"] = v.N;
    j["c0"] = cplx(v.c0);
    j["truncation_flagged"] = v.truncation_flagged;
    json one = json::array();
    for (const auto& [t, w] : v.one)
        one.push_back({{"type", t}, {"wf", node_to_json(w)}});
    j["one"] = std::move(one);
    json two = json::array();
    for (const auto& t : v.two)
        two.push_back({{"a", t.a},
                       {"b", t.b},
                       {"weight", cplx(t.weight)},
                       {"has_s", t.sfac != nullptr},
                       {"fa", node_to_json(t.fa)},
                       {"fb", node_to_json(t.fb)}});
    j["two"] = std::move(two);
    return j.dump(2);
}

FockVector fock_from_json(const SMatrixModel& model, const std::string& text) {
    json j = json::parse(text);
    FockVector v;
    v.N = j.at("N").get<int>();
    v.c0 = cplx_of(j.at("c0"));
    v.truncation_flagged = j.at("truncation_flagged").get<bool>();
    for (const auto& e : j.at("one"))
        v.one[e.at("type").get<int>()] = node_from_json(model, e.at("wf"));
    for (const auto& e : j.at("two")) {
        Term2 t;
        t.a = e.at("a").get<int>();
        t.b = e.at("b").get<int>();
        t.weight = cplx_of(e.at("weight"));
        t.fa = node_from_json(model, e.at("fa"));
        t.fb = node_from_json(model, e.at("fb"));
        t.sfac = e.at("has_s").get<bool>() ? &model.component(t.a, t.b) : nullptr;
        v.two.push_back(std::move(t));
    }
    return v;
}

}  // namespace znwedge
