#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stratscope/csv.hpp"
#include "stratscope/ingest.hpp"
#include "testutil.hpp"

using namespace stratscope;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("csv parser handles quoting, CRLF and blank lines") {
    const auto table = csv::parse("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\nplain,2\n");
    REQUIRE(table.header == std::vector<std::string>{"a", "b"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].fields == std::vector<std::string>{"x,1", "say \"hi\""});
    CHECK(table.rows[1].fields == std::vector<std::string>{"plain", "2"});
    CHECK(table.rows[1].line == 4);
    CHECK_THROWS_AS(csv::parse("a,b\n\"unterminated\n"), csv::ParseError);
    CHECK_THROWS_AS(csv::parse(""), csv::ParseError);
}

TEST_CASE("csv field escaping round-trips") {
    const std::string tricky = "has \"quotes\", commas\nand newlines";
    const auto table = csv::parse("v\n" + csv::format_row({tricky}));
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].fields[0] == tricky);
}

TEST_CASE("load_bundle reads the ebia fixture") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    CHECK(bundle.dimensions.size() == 9);
    CHECK(bundle.indicators.size() == 77);
    CHECK(bundle.preliminary_indicators().size() == 56);
    CHECK(bundle.consolidated_rows().size() == 21);
    CHECK(bundle.countries.size() == 13);
    CHECK(bundle.matches.size() == 66);
    CHECK(bundle.axis_scheme.vertical.size() == 6);
    CHECK(bundle.axis_scheme.transversal.size() == 3);
    CHECK(bundle.correspondences.size() == 37);
    REQUIRE(bundle.has_proposals);
    CHECK(bundle.proposals.size() == 33);
    CHECK(bundle.warnings.empty());
    CHECK(!bundle.reference.empty());
    // codes arrive normalized even though the file uses unpadded forms
    CHECK(bundle.find_indicator("A01") != nullptr);
    CHECK(bundle.find_indicator("A1") == nullptr);
    CHECK(bundle.config.partial_weight == 1.0);
    CHECK(!bundle.config.standout_threshold.has_value());
    CHECK(bundle.config.min_axis_coverage == 3);
}

TEST_CASE("load_bundle accepts header-only files as empty collections") {
    TempDir dir("empty");
    write_file(dir.path() / "dimensions.csv", "code,name,origin\n");
    write_file(dir.path() / "indicators.csv",
               "code,dimension,area,name,status,feasibility_notes\n");
    write_file(dir.path() / "countries.csv",
               "id,name,has_document,uses_indicators,plans_indicators,notes\n");
    write_file(dir.path() / "matches.csv", "indicator,country,quality\n");
    write_file(dir.path() / "axes.csv", "id,kind,name,abbrev\n");
    write_file(dir.path() / "correspondences.csv", "indicator,vertical,transversal\n");
    const auto bundle = load_bundle(dir.path());
    CHECK(bundle.indicators.empty());
    CHECK(bundle.countries.empty());
    CHECK(bundle.axis_scheme.empty());

    // exporting the empty bundle writes the six header-only files back
    TempDir out("empty_out");
    export_bundle(bundle, out.path());
    CHECK(testutil::read_file(out.path() / "matches.csv") == "indicator,country,quality\n");
    CHECK(testutil::read_file(out.path() / "axes.csv") == "id,kind,name,abbrev\n");
    for (const char* name : {"dimensions.csv", "indicators.csv", "countries.csv", "matches.csv",
                             "axes.csv", "correspondences.csv"}) {
        const auto text = testutil::read_file(out.path() / name);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }
}

TEST_CASE("load_bundle reports a dangling match with its line") {
    TempDir dir("dangling");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "matches.csv",
               "indicator,country,quality\nA01,AAA,full\nA01,XX,full\n");
    try {
        load_bundle(dir.path());
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::data);
        bool found = false;
        for (const auto& d : e.diagnostics()) {
            if (d.message.find("XX") != std::string::npos) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("load_bundle yields one diagnostic per bad row") {
    TempDir dir("badrows");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "matches.csv",
               "indicator,country,quality\n"
               "A01,AAA,full\n"
               "A123,AAA,full\n"        // malformed code
               "A01,AAA,sideways\n"     // bad quality
               "A01,AAA\n");            // wrong width
    try {
        load_bundle(dir.path());
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        int row_errors = 0;
        for (const auto& d : e.diagnostics()) {
            if (d.severity == Diagnostic::Severity::error && d.file == "matches.csv") {
                ++row_errors;
                CHECK(d.line > 1);
            }
        }
        // the duplicate (A01, AAA) pair also surfaces as a dataset violation,
        // which reports under "dataset", not the file
        CHECK(row_errors == 3);
    }
}

TEST_CASE("load_bundle fails with io kind on missing files") {
    TempDir dir("missing");
    testutil::write_minimal_dataset(dir.path());
    std::filesystem::remove(dir.path() / "axes.csv");
    try {
        load_bundle(dir.path());
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::io);
        REQUIRE(e.diagnostics().size() == 1);
        CHECK(e.diagnostics()[0].file == "axes.csv");
    }
    CHECK_THROWS_AS(load_bundle(dir.path() / "nope"), DatasetError);
}

TEST_CASE("load_bundle warns about unknown extra columns") {
    TempDir dir("extra");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "matches.csv",
               "indicator,country,quality,confidence\nA01,AAA,full,0.9\n");
    const auto bundle = load_bundle(dir.path());
    REQUIRE(bundle.warnings.size() == 1);
    CHECK(bundle.warnings[0].message.find("confidence") != std::string::npos);
}

TEST_CASE("load_bundle collapses duplicate correspondence rows with a warning") {
    TempDir dir("dupcorr");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "correspondences.csv",
               "indicator,vertical,transversal\nA01,V1,T1\nA01,V1,T1\n");
    const auto bundle = load_bundle(dir.path());
    CHECK(bundle.correspondences.size() == 1);
    REQUIRE(bundle.warnings.size() == 1);
    CHECK(bundle.warnings[0].file == "correspondences.csv");
}

TEST_CASE("load_bundle validates config.json") {
    TempDir dir("config");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "config.json",
               "{\"partial_weight\": 0.5, \"std_mode\": \"sample\", "
               "\"standout_threshold\": 4, \"min_axis_coverage\": 2, \"surprise\": 1}\n");
    const auto bundle = load_bundle(dir.path());
    CHECK(bundle.config.partial_weight == 0.5);
    CHECK(bundle.config.std_mode == StdMode::sample);
    REQUIRE(bundle.config.standout_threshold.has_value());
    CHECK(*bundle.config.standout_threshold == 4);
    CHECK(bundle.config.min_axis_coverage == 2);
    REQUIRE(bundle.warnings.size() == 1);
    CHECK(bundle.warnings[0].message.find("surprise") != std::string::npos);

    write_file(dir.path() / "config.json", "{\"partial_weight\": 1.5}\n");
    CHECK_THROWS_AS(load_bundle(dir.path()), DatasetError);
}

TEST_CASE("export after load is canonical and stable") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    TempDir first("export1");
    TempDir second("export2");
    export_bundle(bundle, first.path());
    // the fixture's unpadded codes come out canonical
    const auto indicators = testutil::read_file(first.path() / "indicators.csv");
    CHECK(indicators.find("\nA01,") != std::string::npos);
    CHECK(indicators.find("\nA1,") == std::string::npos);

    const auto reloaded = load_bundle(first.path());
    export_bundle(reloaded, second.path());
    for (const char* name :
         {"dimensions.csv", "indicators.csv", "countries.csv", "matches.csv", "axes.csv",
          "correspondences.csv", "proposals.csv", "config.json", "reference.json"}) {
        INFO(name);
        CHECK(testutil::read_file(first.path() / name) ==
              testutil::read_file(second.path() / name));
    }
    // round-tripped bundle validates identically (i.e. cleanly)
    CHECK(validate_dataset(reloaded.indicators, reloaded.dimensions, reloaded.countries,
                           reloaded.matches, reloaded.axis_scheme, reloaded.correspondences)
              .empty());
    CHECK(reloaded.matches.size() == bundle.matches.size());
    CHECK(reloaded.proposals.size() == bundle.proposals.size());
}

TEST_CASE("export_bundle fails with io kind on an unwritable target") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    TempDir dir("unwritable");
    write_file(dir.path() / "blocker", "");
    try {
        export_bundle(bundle, dir.path() / "blocker" / "nested");
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        CHECK(e.kind() == DatasetError::Kind::io);
    }
}

TEST_CASE("proposal rows are checked against countries and alias dimensions") {
    TempDir dir("proposals");
    testutil::write_minimal_dataset(dir.path());
    write_file(dir.path() / "proposals.csv",
               "name,target_dimension,source_countries,alias_group,accepted\n"
               "Thing one,A,AAA,g1,true\n"
               "Thing two,New dimension,AAA,g1,true\n"
               "Thing three,A,ZZZ,,true\n"
               "Thing four,A,,,true\n");
    try {
        load_bundle(dir.path());
        FAIL("expected DatasetError");
    } catch (const DatasetError& e) {
        int errors = 0;
        for (const auto& d : e.diagnostics()) {
            if (d.severity == Diagnostic::Severity::error) {
                ++errors;
            }
        }
        CHECK(errors == 3);  // alias span, unknown country, empty country list
    }
}
