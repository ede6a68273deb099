#pragma once

#include <vector>

#include "znwedge/types.hpp"

namespace znwedge {

struct Rapidity {
    Complex value;
    bool in_physical_strip() const {
        return value.imag() > 0.0 && value.imag() < kPi;
    }
};

struct TwoMomentum {
    Complex p0;
    Complex p1;
};

// (m cosh z, m sinh z); entire in z. Throws on non-positive mass.
TwoMomentum mass_shell_momentum(double m, Rapidity zeta);

struct FusionAngles {
    double theta_ab = 0.0;   // rotation applied to the first constituent
    double theta_ba = 0.0;   // rotation applied to the second
    double theta_sum = 0.0;  // theta_ab + theta_ba, the s-channel angle
};

// Solves m_a e^{ia} + m_b e^{-ib} = m_c for a, b in (0, pi) by damped Newton.
// Residual below 1e-12 * m_c. Throws NoFusionSolution outside the mass
// triangle and ThresholdError within 1e-9 relative of its boundary.
FusionAngles solve_fusion_angles(double m_a, double m_b, double m_c);

struct MassSpectrum {
    int N = 0;
    double m1 = 0.0;
    // masses[t] for t in 1..N-1; index 0 unused.
    std::vector<double> masses;
    double mass(int type) const;
};

// Masses forced by requiring each recursive fusion (1,k) -> k+1 to sit at the
// s-channel pole of the bootstrap-built component S_{1k}. N >= 3.
MassSpectrum zn_mass_spectrum(int N, double m1);

}  // namespace znwedge
