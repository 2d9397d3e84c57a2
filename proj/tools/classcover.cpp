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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "classcover/bernoulli.hpp"
#include "classcover/class_group.hpp"
#include "classcover/report.hpp"

namespace {

using namespace classcover;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void print_class_group(const ClassGroup& cl) {
    std::cout << "class number: " << cl.class_number.get_str() << "\n";
    std::cout << "invariant factors:";
    if (cl.trivial()) {
        std::cout << " (trivial)";
    } else {
        for (const Int& d : cl.invariant_factors) std::cout << " " << d.get_str();
    }
    std::cout << "\ncertification: " << to_string(cl.certification) << "\n";
    for (size_t i = 0; i < cl.generators.size(); ++i)
        std::cout << "generator " << i + 1 << " (order " << cl.invariant_factors[i].get_str()
                  << "): " << cl.generators[i].to_string() << "\n";
}

int cmd_scan(const ScanConfig& cfg) {
    const auto report = run_pipeline(cfg);
    std::cout << "curve: " << report.curve_key << "  genus " << report.curve_genus;
    if (report.genus_warning)
        std::cout << "  [warning: genus 0, no stable torsion expected]";
    std::cout << "\nrange: " << report.t_lo.get_str() << ".." << report.t_hi.get_str() << "\n";
    for (const auto& row : report.rows) {
        std::cout << "t=" << row.t.get_str() << "  " << to_string(row.status);
        if (row.field_disc) std::cout << "  disc=" << row.field_disc->get_str();
        for (const auto& cert : row.certificates)
            std::cout << "  [q=" << cert.witness_prime.get_str() << " order " << cert.order_text()
                      << "]";
        if (row.status == RowStatus::degenerate_power && !row.components.empty()) {
            std::cout << "  components:";
            for (const auto& c : row.components) std::cout << " " << c;
        }
        if (!row.note.empty()) std::cout << "  (" << row.note << ")";
        std::cout << "\n";
    }
    std::cout << "summary:";
    for (const auto& [status, count] : report.counts) std::cout << " " << status << "=" << count;
    std::cout << "  certificates=" << report.certificate_count() << "\n";
    return kExitOk;
}

int cmd_field(const std::string& poly_text, const std::string& catalog_path) {
    const Poly f = parse_poly_desc(poly_text);
    auto field = maximal_order(f);
    std::cout << "field: " << field->key() << "\n";
    std::cout << "degree: " << field->degree << "  signature: (" << field->r1 << ", " << field->r2
              << ")\n";
    std::cout << "poly disc: " << field->poly_disc.get_str() << "\n";
    std::cout << "field disc: " << field->field_disc.get_str() << "  index: "
              << field->index.get_str() << "\n";
    std::cout << "integral basis (rows over the power basis, denominator "
              << field->basis_den.get_str() << "):\n";
    for (size_t i = 0; i < field->degree; ++i) {
        std::cout << "  ";
        for (size_t j = 0; j < field->degree; ++j)
            std::cout << field->basis_num(i, j).get_str() << (j + 1 < field->degree ? " " : "\n");
    }
    const Rat mk = minkowski_bound(*field);
    std::cout << "Minkowski bound: " << mk.get_str() << " (~" << mk.get_d() << ")\n";
    ClassGroup cl;
    bool have_group = true;
    try {
        if (field->degree == 2) {
            cl = class_group_quadratic(field->field_disc);
            std::cout << "class group (binary quadratic forms):\n";
        } else {
            cl = class_group_generic(field);
            std::cout << "class group (relation matrix):\n";
        }
        print_class_group(cl);
    } catch (const unsupported_field_error& e) {
        have_group = false;
        std::cout << "class group: not computed (" << e.what() << ")\n";
    }
    if (!catalog_path.empty()) {
        CatalogRecord rec;
        rec.key = field->key();
        rec.field_disc = field->field_disc;
        rec.has_class_group = have_group;
        if (have_group) {
            rec.class_group_factors = cl.invariant_factors;
            rec.certification = to_string(cl.certification);
        } else {
            rec.certification = "none";
        }
        rec.timestamp = iso_timestamp();
        catalog_append(catalog_path, rec);
        catalog_compact(catalog_path);
        std::cout << "catalog updated: " << catalog_path << "\n";
    }
    return kExitOk;
}

int cmd_classgroup(const std::string& disc_text) {
    const Int d(disc_text);
    print_class_group(class_group_quadratic(d));
    return kExitOk;
}

int cmd_bernoulli(long p, unsigned long table_max) {
    const auto rep = herbrand_ribet_report(Int(p));
    std::cout << rep.statement << "\n";
    if (!rep.pairs.empty()) {
        std::cout << "irregular pairs:";
        for (const auto& [q, k] : rep.pairs) std::cout << " (" << q.get_str() << "," << k << ")";
        std::cout << "\n";
    }
    if (rep.h_minus) std::cout << "h-(" << p << ") = " << rep.h_minus->get_str() << "\n";
    if (table_max > 0) {
        const auto table = bernoulli_exact(table_max);
        for (unsigned long k = 0; k <= table_max; ++k) {
            if (k > 1 && k % 2 == 1) continue;
            std::cout << "B_" << k << " = " << table.at(k).get_str() << "\n";
        }
    }
    return kExitOk;
}

int cmd_certify(const std::string& catalog_path, const std::string& cert_id) {
    const auto records = catalog_read(catalog_path);
    for (const auto& rec : records) {
        for (const auto& jcert : rec.certificates) {
            if (jcert.at("id").get<std::string>() != cert_id) continue;
            const std::string coeffs = jcert.at("fieldCoeffs").get<std::string>();
            auto field = maximal_order(parse_poly_desc(coeffs));
            const auto cert = detail::certificate_of_json(field, jcert);
            const bool ok = verify_certificate(field, cert);
            std::cout << "certificate " << cert_id << ": "
                      << (ok ? "verified" : "FAILED re-verification") << "\n";
            std::cout << "  field " << cert.field_key << "  q=" << cert.witness_prime.get_str()
                      << "  order " << cert.order_text() << "\n";
            if (!ok) throw contract_violation("stored certificate failed re-verification");
            return kExitOk;
        }
    }
    throw config_error("certificate id '" + cert_id + "' not found in " + catalog_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classcover: class-group torsion from superelliptic curve specializations"};
    app.set_version_flag("--version", std::string(classcover::kToolVersion));
    app.require_subcommand(1);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "specialize a curve over a parameter range and certify torsion classes");
    std::string config_path, curve_m, curve_f, range_text, out_csv, out_json, out_catalog;
    unsigned long budget_trial = 0, budget_factor = 0, budget_principality = 0, budget_relations = 0;
    unsigned long long seed = 0;
    std::string curve_text;
    scan_cmd->add_option("--config", config_path, "config file (key = value lines)");
    scan_cmd->add_option("--curve", curve_text, "curve as 'm; c_n,...,c_0'");
    scan_cmd->add_option("--curve.m", curve_m, "cover degree m >= 2");
    scan_cmd->add_option("--curve.f", curve_f, "rational coefficients of f, descending degree");
    scan_cmd->add_option("--scan.range", range_text, "inclusive parameter range lo..hi");
    scan_cmd->add_option("--budget.trial", budget_trial, "trial division bound");
    scan_cmd->add_option("--budget.factor", budget_factor, "Pollard rho iteration budget");
    scan_cmd->add_option("--budget.principality", budget_principality, "principality search radius");
    scan_cmd->add_option("--budget.relations", budget_relations, "relation search radius cap");
    scan_cmd->add_option("--seed", seed, "seed offsetting the deterministic randomized subroutines");
    scan_cmd->add_option("--out.csv", out_csv, "CSV report path");
    scan_cmd->add_option("--out.json", out_json, "JSON report path");
    scan_cmd->add_option("--out.catalog", out_catalog, "catalog path (JSON lines)");

    // field
    auto* field_cmd = app.add_subcommand("field", "maximal order, invariants and class group of Q[x]/(f)");
    std::string field_poly, field_catalog;
    field_cmd->add_option("poly", field_poly, "monic integer coefficients, descending degree")->required();
    field_cmd->add_option("--catalog", field_catalog, "append the result to this catalog");

    // classgroup
    auto* cg_cmd = app.add_subcommand("classgroup", "exact quadratic class group by reduced forms");
    std::string disc_text;
    cg_cmd->add_option("-d,--disc", disc_text, "fundamental discriminant")->required();

    // bernoulli
    auto* bern_cmd = app.add_subcommand("bernoulli", "Bernoulli/irregularity report for an odd prime");
    long bern_p = 0;
    unsigned long bern_table = 0;
    bern_cmd->add_option("-p,--prime", bern_p, "odd prime")->required();
    bern_cmd->add_option("--table", bern_table, "also print exact B_0..B_k");

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "re-verify a stored certificate from the catalog");
    std::string cert_catalog, cert_id;
    cert_cmd->add_option("--catalog", cert_catalog, "catalog path")->required();
    cert_cmd->add_option("--id", cert_id, "certificate id, e.g. t3.q53")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (scan_cmd->parsed()) {
            ScanConfig cfg;
            if (!config_path.empty()) {
                cfg = classcover::parse_config(read_file(config_path));
            } else {
                if (!curve_text.empty()) {
                    const auto curve = classcover::parse_curve(curve_text);
                    curve_m = std::to_string(curve.m);
                    curve_f = classcover::poly_desc_string(curve.f);
                }
                std::ostringstream os;
                if (curve_m.empty() || curve_f.empty() || range_text.empty())
                    throw classcover::config_error(
                        "scan needs --config, or --curve/--curve.m/--curve.f plus --scan.range");
                os << "curve.m = " << curve_m << "\n";
                os << "curve.f = " << curve_f << "\n";
                os << "scan.range = " << range_text << "\n";
                cfg = classcover::parse_config(os.str());
            }
            if (budget_trial) cfg.budget_trial = budget_trial;
            if (budget_factor) cfg.budget_factor = budget_factor;
            if (budget_principality) cfg.budget_principality = budget_principality;
            if (budget_relations) cfg.budget_relations = budget_relations;
            if (seed) cfg.seed = seed;
            if (!out_csv.empty()) cfg.out_csv = out_csv;
            if (!out_json.empty()) cfg.out_json = out_json;
            if (!out_catalog.empty()) cfg.out_catalog = out_catalog;
            return cmd_scan(cfg);
        }
        if (field_cmd->parsed()) return cmd_field(field_poly, field_catalog);
        if (cg_cmd->parsed()) return cmd_classgroup(disc_text);
        if (bern_cmd->parsed()) return cmd_bernoulli(bern_p, bern_table);
        if (cert_cmd->parsed()) return cmd_certify(cert_catalog, cert_id);
    } catch (const classcover::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const classcover::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const classcover::unsupported_field_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitConfig;
    } catch (const classcover::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
