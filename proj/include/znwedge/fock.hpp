#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "znwedge/smatrix.hpp"
#include "znwedge/testfn.hpp"

namespace znwedge {

struct WfNode;
using WfPtr = std::shared_ptr<const WfNode>;

// coeff * exp(-width (t - center)^2) * t^power
struct GaussTerm {
    Complex coeff{1.0, 0.0};
    double width = 1.0;
    double center = 0.0;
    int power = 0;
};

// Analytic rapidity wavefunction, built as an expression tree over entire
// closed-form factors plus registered S-component factors whose pole
// positions stay queryable. Evaluable at complex arguments throughout.
// Nodes holding an SComponent pointer require the owning model to outlive
// the vector.
struct WfNode {
    enum class Kind {
        GaussSum,
        OnShell,
        Shift,    // child(z + offset)
        Scale,    // factor * child(z)
        Conj,     // conj(child(conj z))
        Sum,
        Prod,
        SFactor,      // S_{ab}(z + offset)
        Contraction,  // sum_i kernel[i] * S_{ab}(z - nodes[i]); S optional
    };

    Kind kind = Kind::GaussSum;
    std::vector<GaussTerm> gauss;
    OnShellFunction onshell;
    Complex offset{0.0, 0.0};
    Complex factor{1.0, 0.0};
    std::vector<WfPtr> children;
    int sf_a = 0, sf_b = 0;
    const SComponent* sfac = nullptr;
    std::vector<double> nodes;
    std::vector<Complex> kernel;
};

WfPtr wf_gauss(Complex coeff, double width, double center, int power = 0);
WfPtr wf_gauss_sum(std::vector<GaussTerm> terms);
WfPtr wf_onshell(OnShellFunction f);
WfPtr wf_shift(WfPtr child, Complex offset);
WfPtr wf_scale(Complex factor, WfPtr child);
WfPtr wf_conj(WfPtr child);
WfPtr wf_sum(std::vector<WfPtr> parts);
WfPtr wf_prod(std::vector<WfPtr> parts);
WfPtr wf_sfactor(const SMatrixModel& model, int a, int b, Complex offset);

Complex wf_eval(const WfPtr& w, Complex z);

// Singularity positions contributed by attached S factors, in the node's own
// variable. Entire trees return an empty list.
std::vector<Complex> wf_singularities(const WfPtr& w);

// min |Im s| over wf_singularities; +inf when entire.
double wf_pole_margin(const WfPtr& w);

// One creation-ordered summand of a two-particle component: for slot types
// (a, b), weight * fa(t1) * fb(t2), times S_{ab}(t2 - t1) when sfac is set.
struct Term2 {
    int a = 0, b = 0;
    WfPtr fa, fb;
    const SComponent* sfac = nullptr;
    Complex weight{1.0, 0.0};
};

// S-symmetric Fock vector truncated at two particles. truncation_flagged
// records that a three-particle component was dropped somewhere upstream.
struct FockVector {
    int N = 0;
    Complex c0{0.0, 0.0};
    std::map<int, WfPtr> one;
    std::vector<Term2> two;
    bool truncation_flagged = false;
};

FockVector fock_vacuum(int N);
FockVector fock_one_particle(int N, int type, WfPtr wf);
FockVector fock_add(const FockVector& x, const FockVector& y);
FockVector fock_scale(Complex c, const FockVector& x);

// Pointwise two-particle component for slot types (a, b).
Complex two_component(const FockVector& v, int a, int b, Complex t1, Complex t2);

// Max over the grid of |Psi^{ab}(t1,t2) - S_ab(t2-t1) Psi^{ba}(t2,t1)| over
// all type pairs present.
double s_symmetry_residual(const SMatrixModel& model, const FockVector& v,
                           const std::vector<double>& grid);

// Antiunitary CPT implementation: n-particle component for conjugated types
// in reversed order is the complex conjugate of the original at reversed
// (schwarz-reflected) arguments.
FockVector apply_j(const SMatrixModel& model, const FockVector& v);

// Real-line Gauss-Legendre contraction grid.
struct QuadSpec {
    double half_width = 6.0;
    int n = 200;
};

using OneParticleData = std::map<int, WfPtr>;

// vacuum -> one-particle h; one-particle -> S-symmetrized product (the
// transposed term carries the S factor); components above keep_max are
// omitted, raising the truncation flag only at keep_max = 2 (the hard cap).
FockVector zf_create(const SMatrixModel& model, const OneParticleData& h,
                     const FockVector& psi, int keep_max = 2);

// Adjoint of zf_create: contraction of the first rapidity against conj(h)
// by quadrature on q.
FockVector zf_annihilate(const SMatrixModel& model, const OneParticleData& h,
                         const FockVector& psi, const QuadSpec& q);

// phi(f) = zf_create(f^+) + zf_annihilate(schwarz(f^-_bar)); linear in f.
FockVector apply_phi(const SMatrixModel& model, const TestFunction& f,
                     const FockVector& psi, const QuadSpec& q, int keep_max = 2);

// J . phi(cpt_partner(g)) . J
FockVector apply_phi_reflected(const SMatrixModel& model, const TestFunction& g,
                               const FockVector& psi, const QuadSpec& q,
                               int keep_max = 2);

// One-particle bound-state operator: output gamma component is the sum over
// fusion processes (alpha beta) -> gamma of
//   -i eta * f^+_alpha(t + i theta_ab) * psi^beta(t - i theta_ba).
// Vacuum maps to zero. Wavefunction singularities closer to the real line
// than theta_ba raise DomainError naming the offending pole.
FockVector apply_chi_1(const SMatrixModel& model, const FusionTable& table,
                       const TestFunction& f, const FockVector& psi);

// J . chi(cpt_partner(g)) . J on one-particle vectors.
FockVector apply_chi_reflected_1(const SMatrixModel& model,
                                 const FusionTable& table,
                                 const TestFunction& g, const FockVector& psi);

// Adaptive inner product. Purely Gaussian integrands use Gauss-Hermite
// matched to the envelope; anything containing on-shell transforms or S
// factors falls back to Gauss-Legendre on the transforms' validity interval.
// Doubles the order until the relative change is below tol.
Complex inner_product(const FockVector& bra, const FockVector& ket,
                      double tol = 1e-9);

// Term-level JSON round trip. Exact: parameters are serialized losslessly.
std::string fock_to_json(const FockVector& v);
FockVector fock_from_json(const SMatrixModel& model, const std::string& text);

}  // namespace znwedge
