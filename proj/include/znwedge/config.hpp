#pragma once

#include <string>

#include "znwedge/types.hpp"

namespace znwedge {

// Run settings parsed from a flat key = value file with section-prefixed
// keys (docs/config.md lists every key). Unknown keys and malformed values
// raise ConfigError; every field has the default shown here.
struct RunConfig {
    // [model]
    int N = 3;
    double m1 = 1.0;

    // [axioms]
    int unitarity_points = 100;       // real sample points per component
    double unitarity_tol = 1e-10;
    int crossing_re_points = 21;      // strip grid, Re direction
    int crossing_im_points = 9;       // strip grid, Im direction (interior)
    double crossing_half_width = 4.0; // Re range of the strip grid
    double crossing_tol = 1e-8;
    double bootstrap_tol = 1e-8;      // path-independence deviation bound

    // [fusion]
    bool fusion_calibrate = true;     // fit eta when N = 3 (skipped otherwise)
    int calibrate_refine = 2;         // quadrature level used by the fit

    // [weak]
    int weak_refine = 3;              // level for the final verdicts
    double weak_margin = 0.1;         // wedge distance floor, units of 1/m1
    int weak_requests = 5;            // standard scenario pairs 0..n-1 (max 8)

    // [output]
    std::string out_dir = "out";

    // [debug] negative-control switches, also reachable via CLI flags
    bool zero_eta = false;
    double perturb_s = 0.0;           // scales every S component by 1 + eps
};

// Parses config text; `source` names the input in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "config");

// Reads and parses the file at `path`.
RunConfig load_config(const std::string& path);

// Range checks shared by parsing and by CLI flag overrides.
void validate_config(const RunConfig& cfg);

}  // namespace znwedge
