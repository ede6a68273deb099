#include "znwedge/kinematics.hpp"

#include <cmath>

#include "znwedge/smatrix.hpp"

namespace znwedge {

TwoMomentum mass_shell_momentum(double m, Rapidity zeta) {
    if (!(m > 0.0)) throw Error("mass_shell_momentum: mass must be positive");
    return TwoMomentum{m * std::cosh(zeta.value), m * std::sinh(zeta.value)};
}

FusionAngles solve_fusion_angles(double m_a, double m_b, double m_c) {
    if (!(m_a > 0.0 && m_b > 0.0 && m_c > 0.0))
        throw Error("solve_fusion_angles: masses must be positive");
    double lo = std::abs(m_a - m_b), hi = m_a + m_b;
    if (m_c <= lo || m_c >= hi)
        throw NoFusionSolution("solve_fusion_angles: mass triangle violated");
    if (m_c - lo < 1e-9 * m_c || hi - m_c < 1e-9 * m_c)
        throw ThresholdError("solve_fusion_angles: masses at fusion threshold");

    // Isosceles initial guess; exact when m_a == m_b.
    double guess = std::acos(std::min(1.0 - 1e-12, m_c / (m_a + m_b)));
    double a = guess, b = guess;
    auto residual = [&](double aa, double bb) {
        return m_a * std::exp(Complex(0.0, aa)) + m_b * std::exp(Complex(0.0, -bb)) - m_c;
    };
    Complex F = residual(a, b);
    for (int it = 0; it < 200 && std::abs(F) > 1e-13 * m_c; ++it) {
        Complex da = kImag * m_a * std::exp(Complex(0.0, a));
        Complex db = -kImag * m_b * std::exp(Complex(0.0, -b));
        // 2x2 real system (Re F, Im F) in (a, b) via Cramer's rule.
        double det = da.real() * db.imag() - da.imag() * db.real();
        if (std::abs(det) < 1e-300)
            throw NoFusionSolution("solve_fusion_angles: singular Jacobian");
        double step_a = (F.real() * db.imag() - F.imag() * db.real()) / det;
        double step_b = (da.real() * F.imag() - da.imag() * F.real()) / det;
        double damp = 1.0;
        for (int half = 0; half < 40; ++half) {
            double an = a - damp * step_a, bn = b - damp * step_b;
            an = std::min(std::max(an, 1e-12), kPi - 1e-12);
            bn = std::min(std::max(bn, 1e-12), kPi - 1e-12);
            Complex Fn = residual(an, bn);
            if (std::abs(Fn) < std::abs(F)) {
                a = an;
                b = bn;
                F = Fn;
                break;
            }
            damp *= 0.5;
        }
    }
    if (std::abs(F) > 1e-12 * m_c)
        throw NoFusionSolution("solve_fusion_angles: Newton did not converge");
    return FusionAngles{a, b, a + b};
}

double MassSpectrum::mass(int type) const {
    if (type < 1 || type > N - 1) throw Error("MassSpectrum: type out of range");
    return masses[type];
}

MassSpectrum zn_mass_spectrum(int N, double m1) {
    // The recursion lives in the model builder; the masses are a byproduct of
    // constructing the bootstrap components and locating their poles.
    return build_zn_model(N, m1).spectrum;
}

}  // namespace znwedge
