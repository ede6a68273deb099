#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "znwedge/fusion.hpp"
#include "znwedge/kinematics.hpp"
#include "znwedge/types.hpp"

namespace znwedge {

// Closed form sinh((z + 2 pi i/N)/2) / sinh((z - 2 pi i/N)/2).
// Throws PoleProximity within 1e-12 of a denominator zero.
Complex s11(int N, Complex zeta);

struct StripPole {
    Complex location;
    int order = 1;
    char channel = '?';  // 's' | 't' | '?'
};

class SComponent {
  public:
    SComponent() = default;
    SComponent(int alpha, int beta, std::function<Complex(Complex)> raw,
               std::vector<StripPole> poles, std::vector<Complex> removable);

    int alpha() const { return alpha_; }
    int beta() const { return beta_; }

    // Guarded evaluation; PoleProximity within 1e-12 of a registered pole.
    Complex operator()(Complex zeta) const;
    // No proximity throw; still patches removable 0/0 points of factored
    // products by a two-sided average (error O(h^2), h = 1e-5).
    Complex eval_for_scan(Complex zeta) const;

    const std::vector<StripPole>& poles() const { return poles_; }
    const std::vector<Complex>& removable_points() const { return removable_; }

  private:
    int alpha_ = 0;
    int beta_ = 0;
    std::function<Complex(Complex)> raw_;
    std::vector<StripPole> poles_;
    std::vector<Complex> removable_;
};

struct StripRegion {
    double re_min = -0.75;
    double re_max = 0.75;
    double im_min = 0.02;
    double im_max = kPi - 0.02;
};

struct CheckReport {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    int points = 0;
    bool pass = false;
};

struct SMatrixModel {
    int N = 0;
    MassSpectrum spectrum;
    FusionTable table;
    // Keyed by sorted (a, b); S is symmetric in its indices here.
    std::map<std::pair<int, int>, SComponent> components;

    bool has_component(int a, int b) const;
    const SComponent& component(int a, int b) const;  // DependencyMissing
};

// Constructs spectrum, fusion table, all components via the bootstrap,
// pole registries with s/t channel tags, and per-process residues.
// eta is left zero; see calibrate_eta.
SMatrixModel build_zn_model(int N, double m1);

// S^{delta,gamma}(z) = S^{delta,alpha}(z - i th_(ab)) * S^{delta,beta}(z + i th_(ba))
// for the process (alpha,beta) -> gamma from the model's fusion table.
SComponent bootstrap_component(const SMatrixModel& model, int delta, int alpha,
                               int beta);

CheckReport check_unitarity(const SComponent& c, const std::vector<double>& grid);
CheckReport check_crossing(const SMatrixModel& model, int alpha, int beta,
                           const std::vector<Complex>& grid);

// Argument-principle scan on subdivided rectangles, Newton-refined on 1/S.
// Locations accurate to 1e-8; sorted by imaginary part.
std::vector<Complex> locate_poles(const SComponent& c, const StripRegion& region);

// Contour residue on an adaptively sized circle; trapezoidal rule with a
// doubling agreement check, 1e-6 relative.
Complex residue_at(const SComponent& c, Complex pole);

// Rows: N, alpha, beta, pole_re, pole_im, channel, residue_re, residue_im.
void write_pole_table_csv(const SMatrixModel& model, const std::string& path);

}  // namespace znwedge
