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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "classcover/config.hpp"
#include "classcover/report.hpp"

using namespace classcover;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/classcover_test_" + name) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("parse_config minimal with defaults") {
    auto cfg = parse_config("curve.m = 5\ncurve.f = 1,0,0,0,0,-31\nscan.range = 2..10\n");
    CHECK(cfg.m == 5);
    CHECK(cfg.f.to_string() == "x^5-31");
    CHECK(cfg.t_lo == 2);
    CHECK(cfg.t_hi == 10);
    CHECK(cfg.budget_trial == 1000000);
    CHECK(cfg.budget_principality == 3);
    CHECK(cfg.out_csv.empty());
}

TEST_CASE("parse_config rejections") {
    CHECK_THROWS_AS(parse_config("curve.m = 1\ncurve.f = 1,0\nscan.range = 0..1\n"), config_error);
    CHECK_THROWS_AS(parse_config("curve.m = 2\ncurve.f = 1,0\nscan.range = 3..2\n"), config_error);
    CHECK_THROWS_AS(parse_config("curve.m = 2\ncurve.f = 1,0\nscan.range = 0..1\nwat = 1\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("curve.m = 2\ncurve.f = 1,x,0\nscan.range = 0..1\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("curve.m = 2\ncurve.f = 1,0\n"), config_error);
    // line numbers reported
    try {
        parse_config("curve.m = 2\ncurve.f = 1,0\nscan.range = 5..1\n");
        FAIL("expected throw");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("config round trip") {
    auto cfg = parse_config(
        "curve.m = 2\ncurve.f = 1,0,1,1\nscan.range = -3..4\nbudget.factor = 5000\n"
        "seed = 7\nout.csv = a.csv\nout.catalog = b.jsonl\n");
    auto cfg2 = parse_config(render_config(cfg));
    CHECK(cfg2.m == cfg.m);
    CHECK(cfg2.f == cfg.f);
    CHECK(cfg2.t_lo == cfg.t_lo);
    CHECK(cfg2.t_hi == cfg.t_hi);
    CHECK(cfg2.budget_factor == cfg.budget_factor);
    CHECK(cfg2.seed == cfg.seed);
    CHECK(cfg2.out_csv == cfg.out_csv);
    CHECK(cfg2.out_catalog == cfg.out_catalog);
    CHECK(render_config(cfg2) == render_config(cfg));
}

TEST_CASE("csv shape") {
    auto cfg = parse_config("curve.m = 2\ncurve.f = 1,0,0,0,-1,-21\nscan.range = 0..2\n");
    auto report = scan(cfg.curve(), cfg.t_lo, cfg.t_hi, cfg.scan_options());
    const std::string csv = render_csv(report);
    // one header plus one line per t
    size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 4);
    CHECK(csv.rfind("t,status,fieldDisc,witnessPrime,provenOrder,certificateId\n", 0) == 0);
    CHECK(csv.find("0,good,-84,3,2,t0.q3") != std::string::npos);
    CHECK(csv.find("e+") == std::string::npos);  // no scientific notation anywhere
}

TEST_CASE("divisor-set orders render with a bar") {
    auto cfg = parse_config(
        "curve.m = 5\ncurve.f = 1,0,0,0,0,-31\nscan.range = 3..3\nbudget.principality = 2\n");
    auto report = scan(cfg.curve(), cfg.t_lo, cfg.t_hi, cfg.scan_options());
    const std::string csv = render_csv(report);
    CHECK(csv.find("3,good,") != std::string::npos);
    CHECK(csv.find("53,1|5,t3.q53") != std::string::npos);
}

TEST_CASE("pipeline writes sinks and catalog, deterministic modulo timestamp") {
    TempFile csv("out.csv"), json("out.json"), cat("cat.jsonl");
    auto cfg = parse_config("curve.m = 2\ncurve.f = 1,0,0,0,-1,-21\nscan.range = -2..2\n");
    cfg.out_csv = csv.path;
    cfg.out_json = json.path;
    cfg.out_catalog = cat.path;
    auto report = run_pipeline(cfg);
    CHECK(report.rows.size() == 5);

    const std::string csv1 = slurp(csv.path);
    const std::string json1 = slurp(json.path);
    const auto records1 = catalog_read(cat.path);
    CHECK(!records1.empty());

    // rerun: byte-identical CSV; JSON identical except the generated_at line
    run_pipeline(cfg);
    CHECK(slurp(csv.path) == csv1);
    const std::string json2 = slurp(json.path);
    auto mask_timestamp = [](const std::string& s) {
        std::istringstream in(s);
        std::ostringstream out;
        std::string line;
        int masked = 0;
        while (std::getline(in, line)) {
            if (line.find("\"generated_at\"") != std::string::npos) {
                ++masked;
                continue;
            }
            out << line << "\n";
        }
        REQUIRE(masked == 1);  // the timestamp sits on exactly one line
        return out.str();
    };
    CHECK(mask_timestamp(json1) == mask_timestamp(json2));

    // catalog: rerun with identical math content leaves one record per key
    const auto records2 = catalog_read(cat.path);
    std::set<std::string> keys1, keys2;
    for (const auto& r : records1) keys1.insert(r.key);
    for (const auto& r : records2) keys2.insert(r.key);
    CHECK(records2.size() == keys2.size());  // compaction: one record per key
    CHECK(keys1 == keys2);
    // idempotent on identical content: original timestamps survive
    for (size_t i = 0; i < records1.size(); ++i) {
        CHECK(records1[i].fingerprint() == records2[i].fingerprint());
        CHECK(records1[i].timestamp == records2[i].timestamp);
    }
}

TEST_CASE("catalog compaction is idempotent and upserts by key") {
    TempFile cat("compact.jsonl");
    CatalogRecord a;
    a.key = "x^2+21";
    a.field_disc = -84;
    a.certification = "none";
    a.timestamp = "2026-01-01T00:00:00Z";
    catalog_append(cat.path, a);
    catalog_append(cat.path, a);  // duplicate content
    CatalogRecord b = a;
    b.key = "x^2+10";
    b.field_disc = -40;
    catalog_append(cat.path, b);
    catalog_compact(cat.path);
    auto records = catalog_read(cat.path);
    REQUIRE(records.size() == 2);  // one per key, sorted
    CHECK(records[0].key == "x^2+10");
    CHECK(records[1].key == "x^2+21");
    catalog_compact(cat.path);
    auto again = catalog_read(cat.path);
    REQUIRE(again.size() == 2);
    CHECK(again[0].fingerprint() == records[0].fingerprint());

    // genuine upsert: changed math content for one key wins
    CatalogRecord c = a;
    c.has_class_group = true;
    c.class_group_factors = {Int(2), Int(2)};
    c.certification = "proven";
    c.timestamp = "2026-02-02T00:00:00Z";
    catalog_append(cat.path, c);
    catalog_compact(cat.path);
    auto final_records = catalog_read(cat.path);
    REQUIRE(final_records.size() == 2);
    CHECK(final_records[1].has_class_group);
}

TEST_CASE("certificate JSON round trip") {
    auto field = maximal_order(parse_poly_desc("1,0,21"));
    auto ideal = ideal_from_generators(
        field, {field->elem_from_poly(parse_poly_desc("3")),
                field->elem_from_poly(parse_poly_desc("1,0"))});
    auto cert = certify_order(field, ideal, 2, 3);
    cert.id = "t0.q3";
    cert.curve_key = "y^2=x^5-x-21";
    cert.t = 0;
    const Json j = detail::json_of_certificate(cert);
    auto back = detail::certificate_of_json(field, j);
    CHECK(back.id == cert.id);
    CHECK(back.ideal_class == cert.ideal_class);
    CHECK(back.possible_orders == cert.possible_orders);
    CHECK(back.evidence.size() == cert.evidence.size());
    CHECK(verify_certificate(field, back));
}

TEST_CASE("unfactored rows are in-band with a starved budget") {
    auto cfg = parse_config(
        "curve.m = 5\ncurve.f = 1,0,0,0,0,-31\nscan.range = 80..82\n"
        "budget.trial = 3\nbudget.factor = 0\n");
    auto report = scan(cfg.curve(), cfg.t_lo, cfg.t_hi, cfg.scan_options());
    CHECK(report.rows.size() == 3);
    for (const auto& row : report.rows) CHECK(row.status == RowStatus::unfactored);
}
