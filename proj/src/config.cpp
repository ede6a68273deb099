#include "znwedge/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace znwedge {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(source + ":" + std::to_string(lineno) +
                              ": empty key or value");

        if (key == "model.N") cfg.N = parse_int(key, val);
        else if (key == "model.m1") cfg.m1 = parse_double(key, val);
        else if (key == "axioms.unitarity_points") cfg.unitarity_points = parse_int(key, val);
        else if (key == "axioms.unitarity_tol") cfg.unitarity_tol = parse_double(key, val);
        else if (key == "axioms.crossing_re_points") cfg.crossing_re_points = parse_int(key, val);
        else if (key == "axioms.crossing_im_points") cfg.crossing_im_points = parse_int(key, val);
        else if (key == "axioms.crossing_half_width") cfg.crossing_half_width = parse_double(key, val);
        else if (key == "axioms.crossing_tol") cfg.crossing_tol = parse_double(key, val);
        else if (key == "axioms.bootstrap_tol") cfg.bootstrap_tol = parse_double(key, val);
        else if (key == "fusion.calibrate") cfg.fusion_calibrate = parse_bool(key, val);
        else if (key == "fusion.calibrate_refine") cfg.calibrate_refine = parse_int(key, val);
        else if (key == "weak.refine") cfg.weak_refine = parse_int(key, val);
        else if (key == "weak.margin") cfg.weak_margin = parse_double(key, val);
        else if (key == "weak.requests") cfg.weak_requests = parse_int(key, val);
        else if (key == "output.dir") cfg.out_dir = val;
        else if (key == "debug.zero_eta") cfg.zero_eta = parse_bool(key, val);
        else if (key == "debug.perturb_s") cfg.perturb_s = parse_double(key, val);
        else
            throw ConfigError(source + ":" + std::to_string(lineno) +
                              ": unknown config key '" + key + "'");
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void validate_config(const RunConfig& cfg) {
    if (cfg.N < 2) throw ConfigError("model.N must be >= 2");
    if (!(cfg.m1 > 0.0)) throw ConfigError("model.m1 must be positive");
    if (cfg.unitarity_points < 1) throw ConfigError("axioms.unitarity_points must be >= 1");
    if (cfg.crossing_re_points < 1 || cfg.crossing_im_points < 1)
        throw ConfigError("axioms crossing grid sizes must be >= 1");
    if (!(cfg.crossing_half_width > 0.0))
        throw ConfigError("axioms.crossing_half_width must be positive");
    if (!(cfg.unitarity_tol > 0.0) || !(cfg.crossing_tol > 0.0) || !(cfg.bootstrap_tol > 0.0))
        throw ConfigError("axioms tolerances must be positive");
    if (cfg.calibrate_refine < 1 || cfg.calibrate_refine > 3)
        throw ConfigError("fusion.calibrate_refine must be 1, 2 or 3");
    if (cfg.weak_refine < 1 || cfg.weak_refine > 3)
        throw ConfigError("weak.refine must be 1, 2 or 3");
    if (!(cfg.weak_margin >= 0.0)) throw ConfigError("weak.margin must be >= 0");
    if (cfg.weak_requests < 0 || cfg.weak_requests > 8)
        throw ConfigError("weak.requests must be between 0 and 8");
    if (cfg.out_dir.empty()) throw ConfigError("output.dir must be nonempty");
    if (cfg.perturb_s < 0.0) throw ConfigError("debug.perturb_s must be >= 0");
}

}  // namespace znwedge
