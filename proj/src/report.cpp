#include "znwedge/report.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace znwedge {

std::string fmt_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_to_string(const CsvTable& t) {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    };
    emit(t.header);
    for (const auto& row : t.rows) emit(row);
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

void write_csv(const CsvTable& t, const std::string& path) {
    write_text(csv_to_string(t), path);
}

std::string defect_report_json(const DefectReport& rep, const std::string& label) {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["refine_level"] = rep.refine_level;
    auto put = [&j](const char* key, Complex z) {
        j[key] = {{"re", z.real()}, {"im", z.imag()}};
    };
    put("phi_commutator", rep.phi_commutator);
    put("chi_commutator", rep.chi_commutator);
    put("residue_formula", rep.residue_formula);
    put("total", rep.total);
    j["scale"] = rep.scale;
    j["tol_total"] = rep.tol_total;
    j["tol_agreement"] = rep.tol_agreement;
    j["phi_quad_error"] = rep.phi_quad_error;
    j["eta_cancel_error"] = rep.eta_cancel_error;
    j["pass_total"] = rep.pass_total;
    j["pass_agreement"] = rep.pass_agreement;
    j["passed"] = rep.passed;
    j["incomplete"] = rep.incomplete;
    j["message"] = rep.message;
    return j.dump(2) + "\n";
}

}  // namespace znwedge
