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

#ifndef CLASSCOVER_REPORT_HPP
#define CLASSCOVER_REPORT_HPP

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include "classcover/catalog.hpp"
#include "classcover/class_group.hpp"
#include "classcover/config.hpp"
#include "classcover/torsion.hpp"

namespace classcover {

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

/// CSV sink: one row per parameter, headline certificate fields (the smallest
/// witness prime) when present. All numbers are exact decimal integers.
inline std::string render_csv(const SurvivalReport& report) {
    std::ostringstream os;
    os << "t,status,fieldDisc,witnessPrime,provenOrder,certificateId\n";
    for (const auto& row : report.rows) {
        os << row.t.get_str() << "," << to_string(row.status) << ",";
        if (row.field_disc) os << row.field_disc->get_str();
        os << ",";
        if (!row.certificates.empty()) {
            const auto& head = row.certificates.front();
            os << head.witness_prime.get_str() << "," << head.order_text() << "," << head.id;
        } else {
            os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

/// Structured hierarchical report. The timestamp is the only
/// non-deterministic field and sits alone on its own line ("generated_at").
inline Json render_json(const SurvivalReport& report, const std::string& timestamp) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json certs = Json::array();
        for (const auto& cert : row.certificates) certs.push_back(detail::json_of_certificate(cert));
        Json jrow{{"t", row.t.get_str()},
                  {"status", to_string(row.status)},
                  {"value", row.value.get_str()},
                  {"components", row.components},
                  {"certificates", std::move(certs)},
                  {"reverified", row.reverified},
                  {"note", row.note}};
        if (row.field_disc) jrow["fieldDisc"] = row.field_disc->get_str();
        if (!row.field_key.empty()) jrow["fieldKey"] = row.field_key;
        if (row.status == RowStatus::good)
            jrow["galoisClosureDegree"] = row.galois_closure_degree.get_str();
        if (row.class_number) jrow["classNumber"] = row.class_number->get_str();
        if (row.has_class_group) {
            Json fac = Json::array();
            for (const Int& d : row.class_factors) fac.push_back(d.get_str());
            jrow["classGroup"] = std::move(fac);
            jrow["classCertification"] = row.class_certification;
        }
        rows.push_back(std::move(jrow));
    }
    return Json{{"schema", kCatalogSchema},
                {"tool", kToolVersion},
                {"generated_at", timestamp},
                {"curve", report.curve_key},
                {"m", report.m},
                {"genus", report.curve_genus},
                {"genus_warning", report.genus_warning},
                {"range", Json::array({report.t_lo.get_str(), report.t_hi.get_str()})},
                {"counts", report.counts},
                {"certificateCount", report.certificate_count()},
                {"rows", std::move(rows)}};
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw io_error("write to " + path + " failed");
}

/// Emit the configured sinks for a finished report.
inline void emit_outputs(const SurvivalReport& report, const ScanConfig& cfg) {
    const std::string timestamp = iso_timestamp();
    if (!cfg.out_csv.empty()) write_file(cfg.out_csv, render_csv(report));
    if (!cfg.out_json.empty())
        write_file(cfg.out_json, render_json(report, timestamp).dump(2) + "\n");
    if (!cfg.out_catalog.empty()) {
        // one record per field, certificates aggregated across the scanned range
        std::map<std::string, CatalogRecord> by_field;
        for (const auto& row : report.rows) {
            if (row.status != RowStatus::good) continue;
            auto [it, inserted] = by_field.try_emplace(row.field_key);
            CatalogRecord& rec = it->second;
            if (inserted) {
                rec.key = row.field_key;
                rec.field_disc = *row.field_disc;
                rec.timestamp = timestamp;
                rec.has_class_group = row.has_class_group;
                rec.class_group_factors = row.class_factors;
                rec.certification = row.has_class_group ? row.class_certification : "none";
            }
            for (const auto& cert : row.certificates)
                rec.certificates.push_back(detail::json_of_certificate(cert));
        }
        for (const auto& [key, rec] : by_field) catalog_append(cfg.out_catalog, rec);
        catalog_compact(cfg.out_catalog);
    }
}

/// Full pipeline: scan, emit sinks, update the catalog. Mathematical
/// "unknown" outcomes are in-band row content, never failures.
inline SurvivalReport run_pipeline(const ScanConfig& cfg) {
    const auto curve = cfg.curve();
    auto report = scan(curve, cfg.t_lo, cfg.t_hi, cfg.scan_options());
    emit_outputs(report, cfg);
    return report;
}

}  // namespace classcover

#endif
