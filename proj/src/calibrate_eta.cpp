#include <algorithm>
#include <cmath>
#include <complex>

#include "znwedge/fusion.hpp"
#include "znwedge/smatrix.hpp"
#include "znwedge/weaklocality.hpp"

namespace znwedge {

EtaCalibration calibrate_eta(SMatrixModel& model, int refine_level) {
    if (model.N != 3)
        throw CalibrationFailure("eta calibration is defined for the N=3 scenario",
                                 {});
    FusionTable unit = model.table;
    for (auto& [key, proc] : unit.processes) proc.eta = Complex(0.0, 1.0);

    // Regress the phi commutator defect against the unit-eta chi commutator:
    // chi scales as |eta|^2, so the least-squares slope is the fitted |eta|^2.
    double num = 0.0;
    double den = 0.0;
    for (int i = 1; i <= 5; ++i) {
        MatrixElementRequest req = standard_request(i);
        Complex phi = phi_commutator_element(model, req, refine_level);
        Complex chi_unit = chi_commutator_element(model, unit, req, refine_level);
        num += -std::real(std::conj(chi_unit) * phi);
        den += std::norm(chi_unit);
    }
    double fitted = num / den;

    const FusionProcess& p11 = model.table.at(1, 1);
    double predicted = std::real(Complex(0.0, -2.0 * kPi) * p11.residue);

    EtaCalibration out;
    out.fitted_eta_sq = fitted;
    out.predicted_eta_sq = predicted;
    out.fit_rel_residual = std::abs(fitted - predicted) / predicted;
    out.proportionality = fitted / std::abs(p11.residue);
    if (!(fitted > 0.0) || out.fit_rel_residual >= 1e-3)
        throw CalibrationFailure(
            "fitted |eta|^2 deviates from the residue prediction",
            {out.fit_rel_residual});

    Complex eta(0.0, std::sqrt(fitted));
    for (auto& [key, proc] : model.table.processes) proc.eta = eta;

    for (int i = 6; i <= 7; ++i) {
        MatrixElementRequest req = standard_request(i);
        Complex phi = phi_commutator_element(model, req, refine_level);
        Complex chi = chi_commutator_element(model, model.table, req, refine_level);
        Complex res = residue_formula_element(model, req, refine_level);
        double scale = std::max({std::abs(phi), std::abs(chi), std::abs(res),
                                 std::abs(phi + chi)});
        out.holdout_rel_residual =
            std::max(out.holdout_rel_residual, std::abs(phi + chi) / scale);
    }
    return out;
}

}  // namespace znwedge
