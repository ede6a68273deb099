#pragma once

#include <string>

#include "znwedge/fock.hpp"

namespace znwedge {

// Pinned quadrature refinement levels. The u-grid (operator quadrature) uses
// n_u Gauss-Legendre nodes on [-half_width, half_width]; the final pairing
// grid for the phi element uses n_u + 1 nodes so the two resolutions never
// alias. Element values at a given level are reproducible bit-for-bit.
struct RefineSpec {
    double half_width;
    int n_u;
};
RefineSpec refine_spec(int level);  // level in {1,2,3}, else DomainError

struct MatrixElementRequest {
    FockVector bra;  // n <= 1, particle types in {1, N-1}
    FockVector ket;  // n <= 1, particle types in {1, N-1}
    TestFunction f;  // supported in `left`
    TestFunction g;  // supported in `right`
    Wedge left{WedgeSide::Left, 0.0, 0.0};
    Wedge right{WedgeSide::Right, 0.0, 0.0};
};

// Throws DomainError when any request invariant fails: component types
// outside {1, N-1}, particle number > 1, wedge sides wrong or not spacelike
// separated, or support margin below `margin` (units of 1/m1).
void validate_request(const SMatrixModel& model, const MatrixElementRequest& req,
                      double margin = 0.1);

struct DefectReport {
    Complex phi_commutator{};
    Complex chi_commutator{};
    Complex residue_formula{};
    Complex total{};  // phi_commutator + chi_commutator, by construction
    double scale = 0.0;
    double tol_total = 1e-3;
    double tol_agreement = 2e-2;
    // |phi - residue| estimates the phi quadrature error (the residue sum is
    // converged at all levels); |residue + chi| isolates the eta error.
    double phi_quad_error = 0.0;
    double eta_cancel_error = 0.0;
    int refine_level = 3;
    bool pass_total = false;
    bool pass_agreement = false;
    bool passed = false;
    bool incomplete = false;
    std::string message;
};

struct ReportOptions {
    int refine_level = 3;
    // Negative controls deliberately break the support invariant; they set
    // this to false and must come out failing.
    bool enforce_support = true;
    double margin = 0.1;
    // eta source; model.table when null (zero-eta runs pass a zeroed copy)
    const FusionTable* table = nullptr;
};

// <bra, [phi(f), phi'(g)] ket> composed from apply_phi / apply_phi_reflected
// at truncation 2 with the outer application projected to n <= 1 (exact by
// grading for n <= 1 bra/ket, so no truncation flag is ever raised).
Complex phi_commutator_element(const SMatrixModel& model,
                               const MatrixElementRequest& req, int refine_level);

// Same element assembled directly from the n=1 integral kernel
//   D^d(v) = sum_c int du [f-_{cbar} g+_c](u) S_{cd}(v-u)
//          - sum_c int du [f+_c g-_{cbar}](u) S_{cd}(u-v);
// cross-validates the operator composition (agreement at machine precision).
Complex phi_kernel_element(const SMatrixModel& model,
                           const MatrixElementRequest& req, int refine_level);

// <bra, [chi(f), chi'(g)] ket> via apply_chi_1 / apply_chi_reflected_1;
// both preserve n = 1, so the element is exact at the truncation.
Complex chi_commutator_element(const SMatrixModel& model, const FusionTable& table,
                               const MatrixElementRequest& req, int refine_level);

// The defect as a finite sum over the strip poles of the involved S
// components, integrated against bra/ket along the real line. The Down form
// shifts the v-contour below the real axis, the Up form above; both give the
// same value (docs/residue_formula.md derives the assembly).
enum class ResidueShift { Down, Up };
Complex residue_formula_element(const SMatrixModel& model,
                                const MatrixElementRequest& req, int refine_level,
                                ResidueShift form = ResidueShift::Down);

// <Omega, [phi(f), phi'(g)] Omega> on a fixed dense grid, with the size of
// one ordering as the comparison scale.
struct VacuumCommutator {
    Complex value;
    double scale;
};
VacuumCommutator vacuum_commutator_element(const SMatrixModel& model,
                                           const TestFunction& f,
                                           const TestFunction& g);

// Assembles all three elements and the pass verdict. Any component failure
// yields incomplete = true and passed = false, never a silent pass.
DefectReport weak_locality_report(const SMatrixModel& model,
                                  const MatrixElementRequest& req,
                                  const ReportOptions& opt = {});

// Frozen N=3 wedge-separated scenario family shared by the eta calibration,
// the default verification run, and the tests. Index 0 is the reference
// pair; 1..7 are variants of it (1..4 join the default run, 1..5 form the
// calibration fit set, 6..7 are held out). All satisfy the 0.1/m margin.
TestFunction standard_f(int index);
TestFunction standard_g(int index);
FockVector standard_bra();  // fixed Gaussian one-particle vectors, types 1,2
FockVector standard_ket();
MatrixElementRequest standard_request(int index);
// Left-wedge support masquerading as g: breaks wedge separation on purpose
// for the overlapping-supports negative control.
TestFunction overlap_control_g();

}  // namespace znwedge
