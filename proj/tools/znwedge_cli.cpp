#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "znwedge/config.hpp"
#include "znwedge/report.hpp"
#include "znwedge/smatrix.hpp"
#include "znwedge/weaklocality.hpp"

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;
using namespace znwedge;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    int refine = 0;         // 1..3 when set
    bool zero_eta = false;
    double perturb_s = -1.0;  // >= 0 when set
};

RunConfig make_config(const CliOptions& opt) {
    RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.refine != 0) cfg.weak_refine = opt.refine;
    if (opt.zero_eta) cfg.zero_eta = true;
    if (opt.perturb_s >= 0.0) cfg.perturb_s = opt.perturb_s;
    validate_config(cfg);
    return cfg;
}

// Scales every component by 1 + eps; breaks |S| = 1 while crossing, which
// compares the same function to itself, still holds.
void perturb_model(SMatrixModel& m, double eps) {
    Complex fac(1.0 + eps, 0.0);
    for (auto& [key, comp] : m.components) {
        SComponent orig = comp;
        comp = SComponent(
            orig.alpha(), orig.beta(),
            [orig, fac](Complex z) { return fac * orig.eval_for_scan(z); },
            orig.poles(), orig.removable_points());
    }
}

SMatrixModel build_model(const RunConfig& cfg) {
    SMatrixModel m = build_zn_model(cfg.N, cfg.m1);
    if (cfg.perturb_s > 0.0) perturb_model(m, cfg.perturb_s);
    return m;
}

std::string component_id(int a, int b) {
    return "S_" + std::to_string(a) + "_" + std::to_string(b);
}

njson check_json(const CheckReport& rep) {
    return njson{{"name", rep.name},
                 {"points", rep.points},
                 {"max_deviation", rep.max_deviation},
                 {"tolerance", rep.tolerance},
                 {"pass", rep.pass}};
}

std::vector<std::string> check_row(const std::string& kind, const std::string& comp,
                                   const std::string& detail, const CheckReport& rep) {
    return {kind,
            comp,
            detail,
            std::to_string(rep.points),
            fmt_g17(rep.max_deviation),
            fmt_g17(rep.tolerance),
            rep.pass ? "1" : "0"};
}

int cmd_axioms(const RunConfig& cfg) {
    SMatrixModel model = build_model(cfg);

    std::vector<CheckReport> checks;
    CsvTable table;
    table.header = {"check", "component", "detail", "points",
                    "max_deviation", "tolerance", "pass"};

    std::vector<double> ugrid;
    for (int i = 0; i < cfg.unitarity_points; ++i)
        ugrid.push_back(-5.0 + 10.0 * i / std::max(1, cfg.unitarity_points - 1));
    for (const auto& [key, comp] : model.components) {
        CheckReport rep = check_unitarity(comp, ugrid);
        rep.tolerance = cfg.unitarity_tol;
        rep.pass = rep.max_deviation < rep.tolerance;
        table.rows.push_back(
            check_row("unitarity", component_id(key.first, key.second), "", rep));
        checks.push_back(std::move(rep));
    }

    // strip grid; the small Re offset keeps clear of the imaginary-axis poles
    std::vector<Complex> cgrid;
    for (int i = 0; i < cfg.crossing_re_points; ++i) {
        double x = cfg.crossing_re_points == 1
                       ? 0.0137
                       : -cfg.crossing_half_width +
                             2.0 * cfg.crossing_half_width * i /
                                 (cfg.crossing_re_points - 1) +
                             0.0137;
        for (int k = 1; k <= cfg.crossing_im_points; ++k)
            cgrid.push_back(Complex(x, kPi * k / (cfg.crossing_im_points + 1)));
    }
    std::vector<int> ends = {1};
    if (cfg.N - 1 != 1) ends.push_back(cfg.N - 1);
    for (int a : ends)
        for (int b : ends) {
            CheckReport rep = check_crossing(model, a, b, cgrid);
            rep.tolerance = cfg.crossing_tol;
            rep.pass = rep.max_deviation < rep.tolerance;
            table.rows.push_back(check_row("crossing", component_id(a, b), "", rep));
            checks.push_back(std::move(rep));
        }

    // bootstrap path independence: rebuilding S_{delta,gamma} through each
    // fusion (alpha,beta) -> gamma must reproduce the stored component
    std::vector<Complex> pgrid;
    for (double x : {-2.9629, -1.1629, 0.1371, 1.4371, 2.8371})
        for (double y : {0.3, 1.1, 1.9, 2.7}) pgrid.push_back(Complex(x, y));
    for (const auto& [ab, proc] : model.table.processes) {
        for (int delta : ends) {
            SComponent rebuilt = bootstrap_component(model, delta, proc.alpha, proc.beta);
            const SComponent& direct = model.component(delta, proc.gamma);
            CheckReport rep;
            rep.name = "bootstrap " + component_id(delta, proc.gamma) + " via (" +
                       std::to_string(proc.alpha) + "," + std::to_string(proc.beta) + ")";
            rep.tolerance = cfg.bootstrap_tol;
            for (Complex z : pgrid) {
                Complex u, v;
                try {
                    u = rebuilt(z);
                    v = direct(z);
                } catch (const PoleProximity&) {
                    continue;
                }
                if (!std::isfinite(std::abs(u)) || !std::isfinite(std::abs(v))) continue;
                rep.max_deviation = std::max(rep.max_deviation, std::abs(u - v));
                ++rep.points;
            }
            rep.pass = rep.points > 0 && rep.max_deviation < rep.tolerance;
            std::string detail = "via_" + std::to_string(proc.alpha) + "_" +
                                 std::to_string(proc.beta);
            table.rows.push_back(
                check_row("bootstrap_path", component_id(delta, proc.gamma), detail, rep));
            checks.push_back(std::move(rep));
        }
    }

    bool all_pass = true;
    njson jchecks = njson::array();
    for (const CheckReport& rep : checks) {
        all_pass = all_pass && rep.pass;
        jchecks.push_back(check_json(rep));
    }
    njson j{{"N", cfg.N}, {"m1", cfg.m1}, {"all_pass", all_pass}, {"checks", jchecks}};

    write_text(j.dump(2) + "\n", cfg.out_dir + "/axioms_report.json");
    write_csv(table, cfg.out_dir + "/axioms_checks.csv");
    write_pole_table_csv(model, cfg.out_dir + "/smatrix_poles.csv");

    std::cout << "axioms: " << checks.size() << " checks, "
              << (all_pass ? "all pass" : "FAILURES present") << "\n";
    return all_pass ? 0 : 1;
}

int cmd_fusion(const RunConfig& cfg) {
    CsvTable table;
    table.header = {"N",         "alpha",      "beta",       "gamma",
                    "theta_ab",  "theta_ba",   "theta_sum",  "mass_a",
                    "mass_b",    "mass_gamma", "s_pole_re",  "s_pole_im",
                    "residue_re", "residue_im", "eta_re",    "eta_im"};
    njson j{{"N", cfg.N}, {"m1", cfg.m1}};

    if (cfg.N == 2) {  // no admissible pair: 1 + 1 = 0 mod 2
        j["n_processes"] = 0;
        j["calibration"] = nullptr;
        j["processes"] = njson::array();
        write_csv(table, cfg.out_dir + "/fusion_table.csv");
        write_text(j.dump(2) + "\n", cfg.out_dir + "/fusion_report.json");
        std::cout << "fusion: empty table for N=2\n";
        return 0;
    }

    SMatrixModel model = build_model(cfg);
    if (cfg.fusion_calibrate && !cfg.zero_eta && cfg.N == 3) {
        EtaCalibration cal = calibrate_eta(model, cfg.calibrate_refine);
        j["calibration"] = njson{{"fitted_eta_sq", cal.fitted_eta_sq},
                                 {"predicted_eta_sq", cal.predicted_eta_sq},
                                 {"fit_rel_residual", cal.fit_rel_residual},
                                 {"holdout_rel_residual", cal.holdout_rel_residual},
                                 {"proportionality", cal.proportionality}};
    } else {
        j["calibration"] = nullptr;
    }

    njson jprocs = njson::array();
    for (const auto& [ab, p] : model.table.processes) {
        if (p.alpha > p.beta) continue;  // one row per unordered pair
        const MassSpectrum& sp = model.spectrum;
        table.rows.push_back({std::to_string(cfg.N), std::to_string(p.alpha),
                              std::to_string(p.beta), std::to_string(p.gamma),
                              fmt_g17(p.angles.theta_ab), fmt_g17(p.angles.theta_ba),
                              fmt_g17(p.angles.theta_sum), fmt_g17(sp.mass(p.alpha)),
                              fmt_g17(sp.mass(p.beta)), fmt_g17(sp.mass(p.gamma)),
                              fmt_g17(p.s_pole.real()), fmt_g17(p.s_pole.imag()),
                              fmt_g17(p.residue.real()), fmt_g17(p.residue.imag()),
                              fmt_g17(p.eta.real()), fmt_g17(p.eta.imag())});
        jprocs.push_back(njson{{"alpha", p.alpha},
                               {"beta", p.beta},
                               {"gamma", p.gamma},
                               {"theta_sum", p.angles.theta_sum},
                               {"s_pole", {{"re", p.s_pole.real()}, {"im", p.s_pole.imag()}}},
                               {"residue", {{"re", p.residue.real()}, {"im", p.residue.imag()}}},
                               {"eta", {{"re", p.eta.real()}, {"im", p.eta.imag()}}}});
    }
    j["n_processes"] = jprocs.size();
    j["processes"] = jprocs;

    write_csv(table, cfg.out_dir + "/fusion_table.csv");
    write_text(j.dump(2) + "\n", cfg.out_dir + "/fusion_report.json");
    std::cout << "fusion: " << jprocs.size() << " processes\n";
    return 0;
}

int cmd_weak_commutator(const RunConfig& cfg) {
    if (cfg.N != 3)
        throw ConfigError("weak-commutator runs the N=3 scenario; set model.N = 3");

    CsvTable summary;
    summary.header = {"case",      "label",     "refine_level", "phi_re",
                      "phi_im",    "chi_re",    "chi_im",       "residue_re",
                      "residue_im", "total_abs", "scale",        "ratio",
                      "pass_total", "pass_agreement", "passed",  "incomplete"};
    CsvTable refinement;
    refinement.header = {"case", "level", "total_abs", "scale", "ratio"};

    if (cfg.weak_requests == 0) {
        write_csv(summary, cfg.out_dir + "/weak_summary.csv");
        write_csv(refinement, cfg.out_dir + "/weak_refinement.csv");
        std::cout << "weak-commutator: no requests configured\n";
        return 0;
    }

    SMatrixModel model = build_model(cfg);
    FusionTable zero_table;
    if (cfg.zero_eta) {
        zero_table = model.table;  // eta stays zero: the obstruction run
    } else {
        calibrate_eta(model, cfg.calibrate_refine);
        zero_table = model.table;
        for (auto& [k, p] : zero_table.processes) p.eta = Complex(0.0, 0.0);
    }
    const FusionTable* run_table = cfg.zero_eta ? &zero_table : nullptr;

    auto add_row = [&summary](const std::string& kase, const std::string& label,
                              const DefectReport& rep) {
        double ratio = rep.scale > 0.0 ? std::abs(rep.total) / rep.scale : 0.0;
        summary.rows.push_back(
            {kase, label, std::to_string(rep.refine_level),
             fmt_g17(rep.phi_commutator.real()), fmt_g17(rep.phi_commutator.imag()),
             fmt_g17(rep.chi_commutator.real()), fmt_g17(rep.chi_commutator.imag()),
             fmt_g17(rep.residue_formula.real()), fmt_g17(rep.residue_formula.imag()),
             fmt_g17(std::abs(rep.total)), fmt_g17(rep.scale), fmt_g17(ratio),
             rep.pass_total ? "1" : "0", rep.pass_agreement ? "1" : "0",
             rep.passed ? "1" : "0", rep.incomplete ? "1" : "0"});
    };

    bool positives_ok = true;
    for (int i = 0; i < cfg.weak_requests; ++i) {
        MatrixElementRequest req = standard_request(i);
        DefectReport verdict;
        for (int level = 1; level <= 3; ++level) {
            ReportOptions opt{.refine_level = level, .margin = cfg.weak_margin,
                              .table = run_table};
            DefectReport rep = weak_locality_report(model, req, opt);
            double ratio = rep.scale > 0.0 ? std::abs(rep.total) / rep.scale : 0.0;
            refinement.rows.push_back({"pair_" + std::to_string(i),
                                       std::to_string(level),
                                       fmt_g17(std::abs(rep.total)),
                                       fmt_g17(rep.scale), fmt_g17(ratio)});
            if (level == cfg.weak_refine) verdict = rep;
        }
        std::string kase = "pair_" + std::to_string(i);
        add_row(kase, "standard wedge-separated pair " + std::to_string(i), verdict);
        write_text(defect_report_json(verdict, kase),
                   cfg.out_dir + "/request_" + std::to_string(i) + ".json");
        positives_ok = positives_ok && verdict.passed && !verdict.incomplete;
        std::cout << kase << ": " << (verdict.passed ? "pass" : "FAIL")
                  << (verdict.incomplete ? " (incomplete: " + verdict.message + ")" : "")
                  << "\n";
    }

    // mandatory negative controls: each must come out failing
    MatrixElementRequest overlap = standard_request(0);
    overlap.g = overlap_control_g();
    DefectReport rep_overlap = weak_locality_report(
        model, overlap,
        {.refine_level = cfg.weak_refine, .enforce_support = false,
         .margin = cfg.weak_margin, .table = run_table});
    add_row("control_overlap", "overlapping supports (must fail)", rep_overlap);
    write_text(defect_report_json(rep_overlap, "control_overlap"),
               cfg.out_dir + "/control_overlap.json");

    DefectReport rep_zero = weak_locality_report(
        model, standard_request(0),
        {.refine_level = cfg.weak_refine, .margin = cfg.weak_margin,
         .table = &zero_table});
    add_row("control_zero_eta", "eta zeroed, poles present (must fail)", rep_zero);
    write_text(defect_report_json(rep_zero, "control_zero_eta"),
               cfg.out_dir + "/control_zero_eta.json");

    bool controls_ok = !rep_overlap.passed && !rep_zero.passed;
    std::cout << "control_overlap: " << (rep_overlap.passed ? "PASSED (bad)" : "fails as required")
              << "\ncontrol_zero_eta: " << (rep_zero.passed ? "PASSED (bad)" : "fails as required")
              << "\n";

    write_csv(summary, cfg.out_dir + "/weak_summary.csv");
    write_csv(refinement, cfg.out_dir + "/weak_refinement.csv");

    bool ok = positives_ok && controls_ok;
    std::cout << "weak-commutator: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Z(N)-Ising S-matrix and weak wedge-locality verification"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "run settings file (see docs/config.md)");
    app.add_option("--out", opt.out_dir, "output directory (overrides output.dir)");
    app.add_option("--refine", opt.refine, "weak-commutator verdict level")
        ->check(CLI::Range(1, 3));
    app.add_flag("--zero-eta", opt.zero_eta, "debug: run with eta = 0");
    app.add_option("--perturb-s", opt.perturb_s, "debug: scale S by 1 + eps")
        ->check(CLI::NonNegativeNumber);

    CLI::App* ax = app.add_subcommand("axioms",
                                      "unitarity, crossing and bootstrap path checks");
    CLI::App* fu = app.add_subcommand("fusion", "fusion table with calibrated couplings");
    CLI::App* wk = app.add_subcommand("weak-commutator",
                                      "wedge-locality defect cancellation run");
    for (CLI::App* sub : {ax, fu, wk}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = make_config(opt);
        fs::create_directories(cfg.out_dir);
        if (ax->parsed()) return cmd_axioms(cfg);
        if (fu->parsed()) return cmd_fusion(cfg);
        return cmd_weak_commutator(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
