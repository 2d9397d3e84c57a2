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

// Append-only result catalog: one JSON record per line, keyed by the
// canonical defining polynomial. Compaction applies upsert-by-key semantics
// and is idempotent on identical mathematical content (timestamps and tool
// versions are metadata, not content).

#ifndef CLASSCOVER_CATALOG_HPP
#define CLASSCOVER_CATALOG_HPP

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "classcover/ideal.hpp"
#include "classcover/torsion.hpp"

namespace classcover {

inline constexpr int kCatalogSchema = 1;
inline constexpr const char* kToolVersion = "classcover 0.1.0";

using Json = nlohmann::json;

namespace detail {

inline Json json_of_ideal(const FracIdealHNF& ideal) {
    Json rows = Json::array();
    for (size_t i = 0; i < ideal.num.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < ideal.num.cols(); ++j) row.push_back(ideal.num(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return Json{{"num", std::move(rows)}, {"den", ideal.den.get_str()}};
}

inline FracIdealHNF ideal_of_json(std::shared_ptr<const NumberField> field, const Json& j) {
    const auto& rows = j.at("num");
    IntMatrix m(rows.size(), field->degree);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t k = 0; k < field->degree; ++k)
            m(i, k) = Int(rows[i][k].get<std::string>());
    return FracIdealHNF{std::move(field), std::move(m), Int(j.at("den").get<std::string>())};
}

inline Json json_of_certificate(const TorsionCertificate& cert) {
    Json evidence = Json::array();
    for (const auto& step : cert.evidence) {
        Json witness = Json::array();
        for (const Rat& w : step.witness) witness.push_back(w.get_str());
        evidence.push_back(Json{{"divisor", step.divisor.get_str()},
                                {"verdict", to_string(step.verdict)},
                                {"witness", std::move(witness)},
                                {"note", step.note}});
    }
    Json orders = Json::array();
    for (const Int& d : cert.possible_orders) orders.push_back(d.get_str());
    return Json{{"id", cert.id},
                {"curve", cert.curve_key},
                {"t", cert.t.get_str()},
                {"field", cert.field_key},
                {"fieldCoeffs", cert.field_coeffs},
                {"fieldDisc", cert.field_disc.get_str()},
                {"witnessPrime", cert.witness_prime.get_str()},
                {"m", cert.m},
                {"ideal", json_of_ideal(cert.ideal_class)},
                {"possibleOrders", std::move(orders)},
                {"evidence", std::move(evidence)}};
}

inline TorsionCertificate certificate_of_json(std::shared_ptr<const NumberField> field,
                                              const Json& j) {
    TorsionCertificate cert;
    cert.id = j.at("id").get<std::string>();
    cert.curve_key = j.at("curve").get<std::string>();
    cert.t = Int(j.at("t").get<std::string>());
    cert.field_key = j.at("field").get<std::string>();
    cert.field_coeffs = j.at("fieldCoeffs").get<std::string>();
    cert.field_disc = Int(j.at("fieldDisc").get<std::string>());
    cert.witness_prime = Int(j.at("witnessPrime").get<std::string>());
    cert.m = j.at("m").get<unsigned long>();
    cert.ideal_class = ideal_of_json(field, j.at("ideal"));
    for (const auto& d : j.at("possibleOrders")) cert.possible_orders.push_back(Int(d.get<std::string>()));
    for (const auto& e : j.at("evidence")) {
        LadderStep step;
        step.divisor = Int(e.at("divisor").get<std::string>());
        const std::string v = e.at("verdict").get<std::string>();
        step.verdict = v == "principal" ? Principality::principal
                       : v == "nonprincipal" ? Principality::nonprincipal
                                             : Principality::unknown;
        for (const auto& w : e.at("witness")) step.witness.emplace_back(Rat(w.get<std::string>()));
        step.note = e.at("note").get<std::string>();
        cert.evidence.push_back(std::move(step));
    }
    return cert;
}

}  // namespace detail

struct CatalogRecord {
    std::string key;  // canonical defining polynomial
    Int field_disc;
    bool has_class_group = false;
    std::vector<Int> class_group_factors;
    std::string certification;
    std::vector<Json> certificates;  // serialized certificates
    std::string tool_version = kToolVersion;
    std::string timestamp;

    Json to_json() const {
        Json fac = Json::array();
        for (const Int& d : class_group_factors) fac.push_back(d.get_str());
        Json certs = Json::array();
        for (const Json& c : certificates) certs.push_back(c);
        return Json{{"schema", kCatalogSchema},
                    {"key", key},
                    {"fieldDisc", field_disc.get_str()},
                    {"hasClassGroup", has_class_group},
                    {"classGroup", std::move(fac)},
                    {"certification", certification},
                    {"certificates", std::move(certs)},
                    {"toolVersion", tool_version},
                    {"timestamp", timestamp}};
    }

    static CatalogRecord from_json(const Json& j) {
        CatalogRecord rec;
        rec.key = j.at("key").get<std::string>();
        rec.field_disc = Int(j.at("fieldDisc").get<std::string>());
        rec.has_class_group = j.at("hasClassGroup").get<bool>();
        for (const auto& d : j.at("classGroup")) rec.class_group_factors.push_back(Int(d.get<std::string>()));
        rec.certification = j.at("certification").get<std::string>();
        for (const auto& c : j.at("certificates")) rec.certificates.push_back(c);
        rec.tool_version = j.at("toolVersion").get<std::string>();
        rec.timestamp = j.at("timestamp").get<std::string>();
        return rec;
    }

    /// Content signature excluding metadata (timestamp, tool version).
    std::string fingerprint() const {
        Json j = to_json();
        j.erase("timestamp");
        j.erase("toolVersion");
        return j.dump();
    }
};

inline void catalog_append(const std::string& path, const CatalogRecord& rec) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw io_error("catalog: cannot open " + path + " for append");
    out << rec.to_json().dump() << "\n";
    if (!out) throw io_error("catalog: write to " + path + " failed");
}

inline std::vector<CatalogRecord> catalog_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("catalog: cannot open " + path);
    std::vector<CatalogRecord> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(CatalogRecord::from_json(Json::parse(line)));
        } catch (const Json::exception& e) {
            throw io_error("catalog: bad record at " + path + ":" + std::to_string(lineno) +
                           ": " + e.what());
        }
    }
    return records;
}

/// Upsert-by-key compaction: the newest record per key wins, except that a
/// rewrite with identical mathematical content keeps the original record.
/// Output is sorted by key; compaction is idempotent.
inline void catalog_compact(const std::string& path) {
    const auto records = catalog_read(path);
    std::map<std::string, CatalogRecord> by_key;
    for (const auto& rec : records) {
        auto it = by_key.find(rec.key);
        if (it == by_key.end()) {
            by_key.emplace(rec.key, rec);
        } else if (it->second.fingerprint() != rec.fingerprint()) {
            it->second = rec;  // newer, different content
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("catalog: cannot rewrite " + path);
    for (const auto& [key, rec] : by_key) out << rec.to_json().dump() << "\n";
}

}  // namespace classcover

#endif
