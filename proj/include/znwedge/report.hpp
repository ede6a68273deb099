#pragma once

#include <string>
#include <vector>

#include "znwedge/weaklocality.hpp"

namespace znwedge {

// Shortest decimal that round-trips a double (%.17g); all numeric CSV/JSON
// output goes through this so repeated runs are byte-identical.
std::string fmt_g17(double x);

// Minimal CSV: comma separators, LF endings, no quoting. Writers must not
// put commas or newlines in cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_to_string(const CsvTable& t);
void write_csv(const CsvTable& t, const std::string& path);
void write_text(const std::string& text, const std::string& path);

// Stable-key-order JSON for one defect report; label names the request.
std::string defect_report_json(const DefectReport& rep, const std::string& label);

}  // namespace znwedge
