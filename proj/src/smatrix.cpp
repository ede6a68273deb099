#include "znwedge/smatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

namespace znwedge {

namespace {

constexpr double kProximityRadius = 1e-12;
constexpr double kRemovableGuard = 1e-8;
constexpr double kRemovableStep = 1e-5;

Complex s11_raw(int N, Complex z) {
    Complex shift(0.0, 2.0 * kPi / N);
    return std::sinh(0.5 * (z + shift)) / std::sinh(0.5 * (z - shift));
}

// Distance from z to the pole lattice 2 pi i/N + 2 pi i k of s11.
double s11_pole_distance(int N, Complex z, Complex* nearest) {
    double period = 2.0 * kPi;
    double base = 2.0 * kPi / N;
    double k = std::round((z.imag() - base) / period);
    double best = 1e300;
    for (double kk : {k - 1.0, k, k + 1.0}) {
        Complex p(0.0, base + period * kk);
        double d = std::abs(z - p);
        if (d < best) {
            best = d;
            if (nearest) *nearest = p;
        }
    }
    return best;
}

}  // namespace

Complex s11(int N, Complex zeta) {
    if (N < 3) throw Error("s11: N must be >= 3");
    Complex pole;
    if (s11_pole_distance(N, zeta, &pole) < kProximityRadius)
        throw PoleProximity("s11: evaluation at a pole", pole);
    return s11_raw(N, zeta);
}

SComponent::SComponent(int alpha, int beta, std::function<Complex(Complex)> raw,
                       std::vector<StripPole> poles, std::vector<Complex> removable)
    : alpha_(alpha),
      beta_(beta),
      raw_(std::move(raw)),
      poles_(std::move(poles)),
      removable_(std::move(removable)) {}

Complex SComponent::eval_for_scan(Complex zeta) const {
    if (!raw_) throw Error("SComponent: empty evaluator");
    for (Complex r : removable_) {
        if (std::abs(zeta - r) < kRemovableGuard) {
            return 0.5 * (raw_(zeta + kRemovableStep) + raw_(zeta - kRemovableStep));
        }
    }
    return raw_(zeta);
}

Complex SComponent::operator()(Complex zeta) const {
    for (const StripPole& p : poles_) {
        if (std::abs(zeta - p.location) < kProximityRadius)
            throw PoleProximity("SComponent: evaluation at a registered pole",
                                p.location);
    }
    return eval_for_scan(zeta);
}

bool SMatrixModel::has_component(int a, int b) const {
    if (a > b) std::swap(a, b);
    return components.count({a, b}) != 0;
}

const SComponent& SMatrixModel::component(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = components.find({a, b});
    if (it == components.end())
        throw DependencyMissing("component S_{" + std::to_string(a) + "," +
                                std::to_string(b) + "} not constructed");
    return it->second;
}

namespace {

// Winding number of c along the rectangle boundary, divided by 2 pi.
// Returns Z - P inside. Adaptive boundary sampling with phase unwrapping.
int boundary_winding(const SComponent& c, double x0, double x1, double y0,
                     double y1) {
    for (int per_edge = 48; per_edge <= 6144; per_edge *= 2) {
        std::vector<Complex> pts;
        pts.reserve(4 * per_edge);
        auto emit = [&](Complex a, Complex b) {
            for (int i = 0; i < per_edge; ++i)
                pts.push_back(a + (b - a) * (double(i) / per_edge));
        };
        Complex c00(x0, y0), c10(x1, y0), c11(x1, y1), c01(x0, y1);
        emit(c00, c10);
        emit(c10, c11);
        emit(c11, c01);
        emit(c01, c00);

        double total = 0.0;
        double prev = 0.0;
        bool ok = true;
        for (size_t i = 0; i <= pts.size(); ++i) {
            Complex v = c.eval_for_scan(pts[i % pts.size()]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
                std::abs(v) == 0.0) {
                ok = false;
                break;
            }
            double ph = std::arg(v);
            if (i > 0) {
                double d = ph - prev;
                while (d > kPi) d -= 2.0 * kPi;
                while (d < -kPi) d += 2.0 * kPi;
                if (std::abs(d) > 1.5) {
                    ok = false;
                    break;
                }
                total += d;
            }
            prev = ph;
        }
        if (!ok) continue;
        double w = total / (2.0 * kPi);
        if (std::abs(w - std::round(w)) < 0.05) return int(std::round(w));
    }
    throw PoleRefinementFailure("locate_poles: winding did not stabilize");
}

Complex newton_refine_pole(const SComponent& c, Complex z) {
    auto w = [&](Complex x) { return 1.0 / c.eval_for_scan(x); };
    for (int it = 0; it < 60; ++it) {
        double h = 1e-7 * (1.0 + std::abs(z));
        Complex d = (w(z + h) - w(z - h)) / (2.0 * h);
        if (std::abs(d) == 0.0)
            throw PoleRefinementFailure("locate_poles: vanishing derivative of 1/S");
        Complex step = w(z) / d;
        z -= step;
        if (std::abs(step) < 1e-12) return z;
    }
    throw PoleRefinementFailure("locate_poles: Newton did not converge");
}

}  // namespace

std::vector<Complex> locate_poles(const SComponent& c, const StripRegion& region) {
    struct Rect {
        double x0, x1, y0, y1;
    };
    std::vector<Rect> stack{{region.re_min, region.re_max, region.im_min, region.im_max}};
    std::vector<Complex> found;
    int processed = 0;
    while (!stack.empty()) {
        if (++processed > 20000)
            throw PoleRefinementFailure("locate_poles: subdivision overflow");
        Rect r = stack.back();
        stack.pop_back();
        int w = 0;
        bool counted = false;
        // A subdivision edge can land on a pole; nudging the rectangle outward
        // keeps the interior (duplicates are merged after refinement).
        for (double grow : {0.0, 0.003, 0.0071}) {
            double ex = grow * (r.x1 - r.x0) + (grow > 0.0 ? 1e-4 : 0.0);
            double ey = grow * (r.y1 - r.y0) + (grow > 0.0 ? 1e-4 : 0.0);
            try {
                w = boundary_winding(c, r.x0 - ex, r.x1 + ex, r.y0 - ey, r.y1 + ey);
                counted = true;
                break;
            } catch (const PoleRefinementFailure&) {
            }
        }
        if (!counted)
            throw PoleRefinementFailure("locate_poles: winding failed after retries");
        if (w == 0) continue;
        double dx = r.x1 - r.x0, dy = r.y1 - r.y0;
        bool isolated = std::hypot(dx, dy) < 0.05;
        if (isolated) {
            if (w > 0) continue;  // a zero, not a pole
            Complex z = newton_refine_pole(
                c, Complex(0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)));
            found.push_back(z);
            continue;
        }
        if (std::hypot(dx, dy) < 1e-7)
            throw PoleRefinementFailure("locate_poles: unresolvable cluster");
        // Split along the longer side; the off-center ratio keeps subdivision
        // lines away from the imaginary axis where the poles sit.
        if (dx >= dy) {
            double xm = r.x0 + dx * 0.5183;
            stack.push_back({r.x0, xm, r.y0, r.y1});
            stack.push_back({xm, r.x1, r.y0, r.y1});
        } else {
            double ym = r.y0 + dy * 0.5183;
            stack.push_back({r.x0, r.x1, r.y0, ym});
            stack.push_back({r.x0, r.x1, ym, r.y1});
        }
    }
    // Deduplicate refined locations from adjacent rectangles.
    std::sort(found.begin(), found.end(), [](Complex a, Complex b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    std::vector<Complex> out;
    for (Complex z : found) {
        if (out.empty() || std::abs(z - out.back()) > 1e-9) out.push_back(z);
    }
    return out;
}

Complex residue_at(const SComponent& c, Complex pole) {
    double reg_dist = 1e300;
    for (const StripPole& p : c.poles())
        reg_dist = std::min(reg_dist, std::abs(pole - p.location));
    if (reg_dist > 1e-6)
        throw ContourConflict("residue_at: pole is not registered for this component");

    double nearest = 1e300;
    for (const StripPole& p : c.poles()) {
        double d = std::abs(pole - p.location);
        if (d > 1e-6) nearest = std::min(nearest, d);
    }
    for (Complex r : c.removable_points())
        nearest = std::min(nearest, std::abs(pole - r));
    double radius = std::min(0.1, 0.45 * nearest);
    if (radius < 1e-3)
        throw ContourConflict("residue_at: no admissible contour radius");

    // sabs tracks the sample magnitude so the agreement floor stays honest
    // when the coefficient of 1/(z - p) nearly cancels (even-order poles).
    auto trapezoid = [&](int m, double& sabs) {
        Complex acc(0.0, 0.0);
        sabs = 0.0;
        for (int j = 0; j < m; ++j) {
            double phi = 2.0 * kPi * j / m;
            Complex e = std::exp(Complex(0.0, phi));
            Complex v = c.eval_for_scan(pole + radius * e);
            acc += v * e;
            sabs += std::abs(v);
        }
        sabs *= radius / double(m);
        return acc * (radius / double(m));
    };
    double sabs = 0.0;
    Complex prev = trapezoid(64, sabs);
    for (int m = 128; m <= 2048; m *= 2) {
        Complex cur = trapezoid(m, sabs);
        if (std::abs(cur - prev) <= 1e-7 * std::abs(cur) + 1e-12 * sabs) return cur;
        prev = cur;
    }
    throw QuadratureError("residue_at: contour integral did not converge");
}

CheckReport check_unitarity(const SComponent& c, const std::vector<double>& grid) {
    CheckReport rep;
    rep.name = "unitarity S_{" + std::to_string(c.alpha()) + "," +
               std::to_string(c.beta()) + "}";
    rep.tolerance = 1e-10;
    rep.points = int(grid.size());
    double dev = 0.0;
    for (double t : grid) {
        Complex a = c(Complex(t, 0.0));
        Complex b = c(Complex(-t, 0.0));
        dev = std::max(dev, std::abs(a * b - 1.0));
        dev = std::max(dev, std::abs(std::abs(a) - 1.0));
    }
    rep.max_deviation = dev;
    rep.pass = dev < rep.tolerance;
    return rep;
}

CheckReport check_crossing(const SMatrixModel& model, int alpha, int beta,
                           const std::vector<Complex>& grid) {
    CheckReport rep;
    rep.name = "crossing S_{" + std::to_string(alpha) + "," + std::to_string(beta) +
               "} vs S_{" + std::to_string(alpha) + "," +
               std::to_string(antiparticle(model.N, beta)) + "}";
    rep.tolerance = 1e-8;
    rep.points = int(grid.size());
    const SComponent& lhs = model.component(alpha, beta);
    const SComponent& rhs = model.component(antiparticle(model.N, beta), alpha);
    double dev = 0.0;
    for (Complex z : grid)
        dev = std::max(dev, std::abs(lhs(Complex(0.0, kPi) - z) - rhs(z)));
    rep.max_deviation = dev;
    rep.pass = dev < rep.tolerance;
    return rep;
}

namespace {

// Local pole count at a candidate point: minus the winding on a small square.
int local_pole_order(const SComponent& c, Complex z) {
    double h = 2.5e-3;
    return -boundary_winding(c, z.real() - h, z.real() + h, z.imag() - h,
                             z.imag() + h);
}

SComponent make_seed(int N) {
    std::vector<StripPole> poles{{Complex(0.0, 2.0 * kPi / N), 1, 's'}};
    return SComponent(1, 1, [N](Complex z) { return s11_raw(N, z); }, poles, {});
}

// Shared by the builder (explicit angles) and the public op (table lookup).
SComponent make_bootstrap(const SMatrixModel& model, int delta, int alpha,
                          int beta, int gamma, const FusionAngles& angles) {
    auto left = std::make_shared<SComponent>(model.component(delta, alpha));
    auto right = std::make_shared<SComponent>(model.component(delta, beta));
    Complex sa(0.0, angles.theta_ab);
    Complex sb(0.0, angles.theta_ba);
    auto raw = [left, right, sa, sb](Complex z) {
        return left->eval_for_scan(z - sa) * right->eval_for_scan(z + sb);
    };

    // Candidate singular points: the union of shifted registries, kept inside
    // the closed strip, then classified by a local winding count. Candidates
    // where a factor pole meets a factor zero are removable.
    std::vector<Complex> candidates;
    auto add = [&](Complex z) {
        if (z.imag() < -1e-9 || z.imag() > kPi + 1e-9) return;
        for (Complex w : candidates)
            if (std::abs(w - z) < 1e-9) return;
        candidates.push_back(z);
    };
    for (const StripPole& p : left->poles()) add(p.location + sa);
    for (Complex r : left->removable_points()) add(r + sa);
    for (const StripPole& p : right->poles()) add(p.location - sb);
    for (Complex r : right->removable_points()) add(r - sb);

    int lo = std::min(delta, gamma), hi = std::max(delta, gamma);
    SComponent probe(lo, hi, raw, {}, {});
    std::vector<StripPole> poles;
    std::vector<Complex> removable;
    for (Complex z : candidates) {
        int order = local_pole_order(probe, z);
        if (order >= 1)
            poles.push_back({z, order, '?'});
        else
            removable.push_back(z);
    }
    std::sort(poles.begin(), poles.end(), [](const StripPole& a, const StripPole& b) {
        return a.location.imag() < b.location.imag();
    });
    return SComponent(lo, hi, raw, poles, removable);
}

}  // namespace

SComponent bootstrap_component(const SMatrixModel& model, int delta, int alpha,
                               int beta) {
    if (!model.table.has(alpha, beta))
        throw Error("bootstrap_component: no fusion process for this pair");
    const FusionProcess& proc = model.table.at(alpha, beta);
    return make_bootstrap(model, delta, alpha, beta, proc.gamma, proc.angles);
}

SMatrixModel build_zn_model(int N, double m1) {
    if (N < 3) throw Error("build_zn_model: N must be >= 3");
    if (!(m1 > 0.0)) throw Error("build_zn_model: m1 must be positive");

    SMatrixModel model;
    model.N = N;
    model.spectrum.N = N;
    model.spectrum.m1 = m1;
    model.spectrum.masses.assign(N, 0.0);
    model.spectrum.masses[1] = m1;

    model.components[{1, 1}] = make_seed(N);

    // Mass recursion: the largest-Im strip pole of S_{1k} is the s-channel
    // angle of (1,k) -> k+1; the law of cosines then fixes m_{k+1}.
    StripRegion region;
    for (int k = 1; k <= N - 2; ++k) {
        const SComponent& s1k = model.component(1, k);
        double theta_star = -1.0;
        for (const StripPole& p : s1k.poles())
            theta_star = std::max(theta_star, p.location.imag());
        if (theta_star <= 0.0)
            throw Error("build_zn_model: no strip pole found for S_{1," +
                        std::to_string(k) + "}");
        double mk = model.spectrum.masses[k];
        model.spectrum.masses[k + 1] =
            std::abs(m1 * std::exp(Complex(0.0, theta_star)) + mk);
        FusionAngles ang = solve_fusion_angles(m1, mk, model.spectrum.masses[k + 1]);
        model.components[{1, k + 1}] = make_bootstrap(model, 1, 1, k, k + 1, ang);
    }
    for (int t = 1; t < N; ++t) {
        if (std::abs(model.spectrum.masses[t] - model.spectrum.masses[N - t]) >
            1e-10 * m1)
            throw Error("build_zn_model: derived spectrum is not palindromic");
    }

    model.table = build_fusion_table(N, model.spectrum);

    // Remaining components S_{a,b}, a >= 2, via the process (1,a-1) -> a with
    // spectator b; (1,b) and (a-1,b) exist by construction order.
    for (int a = 2; a <= N - 1; ++a) {
        FusionAngles ang = model.table.at(1, a - 1).angles;
        for (int b = a; b <= N - 1; ++b) {
            model.components[{a, b}] = make_bootstrap(model, b, 1, a - 1, a, ang);
        }
    }

    // Channel tags for registered poles.
    for (auto& [key, comp] : model.components) {
        int a = key.first, b = key.second;
        std::vector<StripPole> poles = comp.poles();
        for (StripPole& p : poles) {
            if (model.table.has(a, b) &&
                std::abs(p.location - Complex(0.0, model.table.at(a, b).angles.theta_sum)) <
                    1e-6) {
                p.channel = 's';
                continue;
            }
            int bbar = antiparticle(N, b);
            if (model.table.has(a, bbar) &&
                std::abs(p.location -
                         Complex(0.0, kPi - model.table.at(a, bbar).angles.theta_sum)) <
                    1e-6)
                p.channel = 't';
        }
        comp = SComponent(a, b, [inner = std::make_shared<SComponent>(comp)](
                                    Complex z) { return inner->eval_for_scan(z); },
                          poles, comp.removable_points());
    }

    // Construction-tolerance axiom checks; failure here means the bootstrap
    // convention or the registries are wrong, so it is fatal.
    std::vector<double> ugrid;
    for (int i = 0; i < 20; ++i) ugrid.push_back(-4.9 + 10.0 * (i + 0.5) / 20.0);
    for (auto& [key, comp] : model.components) {
        CheckReport u = check_unitarity(comp, ugrid);
        if (!u.pass)
            throw Error("build_zn_model: " + u.name + " deviates by " +
                        std::to_string(u.max_deviation));
    }
    std::vector<Complex> cgrid;
    for (double x : {-2.3, -0.9, 0.4, 1.7, 3.1})
        for (double y : {0.45, 1.3, 2.6}) cgrid.push_back(Complex(x, y));
    for (int a = 1; a <= N - 1; ++a)
        for (int b = 1; b <= N - 1; ++b) {
            CheckReport cr = check_crossing(model, a, b, cgrid);
            if (!cr.pass)
                throw Error("build_zn_model: " + cr.name + " deviates by " +
                            std::to_string(cr.max_deviation));
        }

    // s-channel pole locations and residues for every fusion process.
    for (auto& [key, proc] : model.table.processes) {
        const SComponent& comp = model.component(proc.alpha, proc.beta);
        proc.s_pole = Complex(0.0, proc.angles.theta_sum);
        proc.residue = residue_at(comp, proc.s_pole);
    }
    return model;
}

void write_pole_table_csv(const SMatrixModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_pole_table_csv: cannot open " + path);
    out << "N,alpha,beta,pole_re,pole_im,channel,residue_re,residue_im\n";
    char buf[512];
    for (const auto& [key, comp] : model.components) {
        for (const StripPole& p : comp.poles()) {
            Complex res = residue_at(comp, p.location);
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%c,%.17g,%.17g\n",
                          model.N, key.first, key.second, p.location.real(),
                          p.location.imag(), p.channel, res.real(), res.imag());
            out << buf;
        }
    }
}

}  // namespace znwedge
