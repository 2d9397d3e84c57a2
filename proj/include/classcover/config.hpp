/*
   Copyright 2026 the classcover authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CLASSCOVER_CONFIG_HPP
#define CLASSCOVER_CONFIG_HPP

#include <optional>
#include <sstream>
#include <string>

#include "classcover/curve.hpp"
#include "classcover/torsion.hpp"

namespace classcover {

/// Scan configuration, mirroring the config text format:
///   curve.m = <int>
///   curve.f = <comma-separated rationals, descending degree>
///   scan.range = <lo>..<hi>
///   budget.trial / budget.factor / budget.principality / budget.relations
///   out.csv / out.json / out.catalog = <path>
///   seed = <int>
struct ScanConfig {
    unsigned long m = 0;
    Poly f;
    Int t_lo, t_hi;
    unsigned long budget_trial = 1000000;
    unsigned long budget_factor = 200000;
    unsigned long budget_principality = 3;
    unsigned long budget_relations = 60;
    unsigned long long seed = 0;
    std::string out_csv;
    std::string out_json;
    std::string out_catalog;

    SuperellipticCurve curve() const { return validate_curve(m, f); }

    ScanOptions scan_options() const {
        ScanOptions opts;
        opts.factor_effort.trial_bound = budget_trial;
        opts.factor_effort.rho_iterations = budget_factor;
        opts.factor_effort.seed = seed;
        opts.principality.radius = budget_principality;
        opts.relation_config.max_radius = budget_relations;
        return opts;
    }
};

namespace detail {

inline std::string strip(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline unsigned long parse_ulong(const std::string& v, int line, const std::string& key) {
    try {
        size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size() || x < 0) throw std::invalid_argument("trailing");
        return static_cast<unsigned long>(x);
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": bad integer for " + key + ": '" + v + "'");
    }
}

}  // namespace detail

/// Parse the config text format. Unknown keys, malformed polynomials and
/// empty ranges are rejected with the offending line (and column for values).
inline ScanConfig parse_config(const std::string& text) {
    ScanConfig cfg;
    bool have_m = false, have_f = false, have_range = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::strip(raw);
        if (s.empty() || s[0] == '#') continue;
        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) + ": expected key = value");
        const std::string key = detail::strip(s.substr(0, eq));
        const std::string value = detail::strip(s.substr(eq + 1));
        const int value_col = static_cast<int>(raw.find('=')) + 2;
        if (value.empty())
            throw config_error("line " + std::to_string(line) + ", col " +
                               std::to_string(value_col) + ": empty value for " + key);
        if (key == "curve.m") {
            cfg.m = detail::parse_ulong(value, line, key);
            if (cfg.m < 2)
                throw config_error("line " + std::to_string(line) + ": curve.m must be at least 2");
            have_m = true;
        } else if (key == "curve.f") {
            try {
                cfg.f = parse_poly_desc(value);
            } catch (const domain_error& e) {
                throw config_error("line " + std::to_string(line) + ", col " +
                                   std::to_string(value_col) + ": " + e.what());
            }
            have_f = true;
        } else if (key == "scan.range") {
            const size_t dots = value.find("..");
            if (dots == std::string::npos)
                throw config_error("line " + std::to_string(line) + ", col " +
                                   std::to_string(value_col) + ": range must look like lo..hi");
            try {
                cfg.t_lo = Int(detail::strip(value.substr(0, dots)));
                cfg.t_hi = Int(detail::strip(value.substr(dots + 2)));
            } catch (const std::invalid_argument&) {
                throw config_error("line " + std::to_string(line) + ", col " +
                                   std::to_string(value_col) + ": bad range endpoints");
            }
            if (cfg.t_lo > cfg.t_hi)
                throw config_error("line " + std::to_string(line) + ": empty range " + value);
            have_range = true;
        } else if (key == "budget.trial") {
            cfg.budget_trial = detail::parse_ulong(value, line, key);
        } else if (key == "budget.factor") {
            cfg.budget_factor = detail::parse_ulong(value, line, key);
        } else if (key == "budget.principality") {
            cfg.budget_principality = detail::parse_ulong(value, line, key);
            if (cfg.budget_principality == 0)
                throw config_error("line " + std::to_string(line) + ": budgets must be positive");
        } else if (key == "budget.relations") {
            cfg.budget_relations = detail::parse_ulong(value, line, key);
            if (cfg.budget_relations == 0)
                throw config_error("line " + std::to_string(line) + ": budgets must be positive");
        } else if (key == "seed") {
            cfg.seed = detail::parse_ulong(value, line, key);
        } else if (key == "out.csv") {
            cfg.out_csv = value;
        } else if (key == "out.json") {
            cfg.out_json = value;
        } else if (key == "out.catalog") {
            cfg.out_catalog = value;
        } else {
            throw config_error("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (!have_m) throw config_error("missing required key curve.m");
    if (!have_f) throw config_error("missing required key curve.f");
    if (!have_range) throw config_error("missing required key scan.range");
    cfg.curve();  // validates squarefree-ness up front
    return cfg;
}

/// Canonical text form; parse_config(render_config(c)) reproduces c.
inline std::string render_config(const ScanConfig& cfg) {
    std::ostringstream os;
    os << "curve.m = " << cfg.m << "\n";
    os << "curve.f = " << poly_desc_string(cfg.f) << "\n";
    os << "scan.range = " << cfg.t_lo.get_str() << ".." << cfg.t_hi.get_str() << "\n";
    os << "budget.trial = " << cfg.budget_trial << "\n";
    os << "budget.factor = " << cfg.budget_factor << "\n";
    os << "budget.principality = " << cfg.budget_principality << "\n";
    os << "budget.relations = " << cfg.budget_relations << "\n";
    os << "seed = " << cfg.seed << "\n";
    if (!cfg.out_csv.empty()) os << "out.csv = " << cfg.out_csv << "\n";
    if (!cfg.out_json.empty()) os << "out.json = " << cfg.out_json << "\n";
    if (!cfg.out_catalog.empty()) os << "out.catalog = " << cfg.out_catalog << "\n";
    return os.str();
}

}  // namespace classcover

#endif
