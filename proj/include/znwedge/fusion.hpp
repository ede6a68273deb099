#pragma once

#include <map>
#include <utility>

#include "znwedge/kinematics.hpp"
#include "znwedge/types.hpp"

namespace znwedge {

struct SMatrixModel;

// N - alpha.
int antiparticle(int N, int alpha);

struct FusionProcess {
    int alpha = 0;
    int beta = 0;
    int gamma = 0;  // (alpha + beta) mod N, nonzero
    FusionAngles angles;
    Complex eta{0.0, 0.0};      // filled by calibrate_eta
    Complex s_pole{0.0, 0.0};   // i * theta_sum; filled against the S-component
    Complex residue{0.0, 0.0};  // residue of S_{alpha beta} at s_pole
};

struct FusionTable {
    int N = 0;
    // Ordered pairs; (alpha, beta) present iff alpha + beta != 0 mod N.
    std::map<std::pair<int, int>, FusionProcess> processes;

    bool has(int alpha, int beta) const;
    const FusionProcess& at(int alpha, int beta) const;
};

// Angles solved for every admissible ordered pair; eta/pole/residue left zero.
FusionTable build_fusion_table(int N, const MassSpectrum& spectrum);

// Outcome of the least-squares eta calibration (N=3).
struct EtaCalibration {
    double fitted_eta_sq = 0.0;       // |eta|^2 from the fit
    double predicted_eta_sq = 0.0;    // -2 pi i * residue (real positive)
    double fit_rel_residual = 0.0;    // |fitted - predicted| / predicted
    double holdout_rel_residual = 0.0;  // max |total|/scale over held-out pairs
    double proportionality = 0.0;     // fitted_eta_sq / |residue|
};

// Determines eta so that the one-particle commutator cancellation holds,
// by a least-squares fit of |eta|^2 over five wedge-separated test-function
// pairs, then evaluated on two held-out pairs. Writes eta into model's
// fusion table unless the fit deviates from the residue prediction by 1e-3
// relative or more (CalibrationFailure, table untouched). refine_level
// indexes the weak-locality quadrature levels (1-based).
EtaCalibration calibrate_eta(SMatrixModel& model, int refine_level = 2);

}  // namespace znwedge
