#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "stratscope/model.hpp"

using namespace stratscope;

TEST_CASE("normalize_code canonicalizes and zero-pads") {
    CHECK(normalize_code("a1") == "A01");
    CHECK(normalize_code("B13") == "B13");
    CHECK(normalize_code("c07") == "C07");
    CHECK(normalize_code("Z99") == "Z99");
}

TEST_CASE("normalize_code rejects malformed input with position info") {
    CHECK_THROWS_AS(normalize_code("A123"), CodeFormatError);
    try {
        normalize_code("A123");
    } catch (const CodeFormatError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(normalize_code(""), CodeFormatError);
    CHECK_THROWS_AS(normalize_code("7A"), CodeFormatError);
    CHECK_THROWS_AS(normalize_code("A"), CodeFormatError);
    CHECK_THROWS_AS(normalize_code("AB1"), CodeFormatError);
    CHECK_THROWS_AS(normalize_code("A0"), CodeFormatError);   // number must be >= 1
    CHECK_THROWS_AS(normalize_code("A00"), CodeFormatError);
    try {
        normalize_code("B2x");
    } catch (const CodeFormatError& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("normalize_code is idempotent") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::string raw;
        raw += static_cast<char>('a' + rng() % 26);
        const int number = 1 + static_cast<int>(rng() % 99);
        raw += std::to_string(number);
        const std::string once = normalize_code(raw);
        CHECK(normalize_code(once) == once);
    }
}

namespace {

struct TinyDataset {
    std::vector<Indicator> indicators;
    std::vector<Dimension> dimensions;
    std::vector<CountryRecord> countries;
    std::vector<MatchRecord> matches;
    AxisScheme scheme;
    std::vector<CorrespondenceEntry> correspondences;

    ValidationReport validate() const {
        return validate_dataset(indicators, dimensions, countries, matches, scheme,
                                correspondences);
    }
};

TinyDataset consistent_dataset() {
    TinyDataset d;
    d.dimensions = {{"A", "Adoption", DimensionOrigin::preliminary}};
    d.indicators = {{"A01", "A", "", "First", IndicatorStatus::preliminary, ""},
                    {"A02", "A", "", "Second", IndicatorStatus::consolidated, ""}};
    d.countries = {{"AAA", "Testland", true, true, false, ""},
                   {"BBB", "Otherland", false, false, false, ""}};
    d.matches = {{"A01", "AAA", MatchQuality::full}};
    d.scheme.vertical = {{"V1", "Vertical", "V1"}};
    d.scheme.transversal = {{"T1", "Transversal", "T1"}};
    d.correspondences = {{"A02", "V1", "T1"}, {"A01", "OVA", "OTA"}};
    return d;
}

}  // namespace

TEST_CASE("validate_dataset accepts an empty dataset") {
    CHECK(TinyDataset{}.validate().empty());
}

TEST_CASE("validate_dataset accepts a consistent dataset") {
    CHECK(consistent_dataset().validate().empty());
}

TEST_CASE("validate_dataset flags a dangling match reference") {
    auto d = consistent_dataset();
    d.matches.push_back({"Z99", "AAA", MatchQuality::full});
    const auto report = d.validate();
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == ViolationKind::dangling_reference);
    CHECK(report[0].message.find("Z99") != std::string::npos);
}

TEST_CASE("validate_dataset flags duplicates") {
    auto d = consistent_dataset();
    d.indicators.push_back({"A01", "A", "", "Dup", IndicatorStatus::preliminary, ""});
    d.matches.push_back({"A01", "AAA", MatchQuality::partial});
    d.correspondences.push_back({"A01", "OVA", "OTA"});
    const auto report = d.validate();
    CHECK(report.size() == 3);
    for (const auto& violation : report) {
        CHECK(violation.kind == ViolationKind::duplicate_code);
    }
}

TEST_CASE("validate_dataset flags pattern and field failures") {
    auto d = consistent_dataset();
    d.indicators.push_back({"A3", "A", "", "Unpadded", IndicatorStatus::preliminary, ""});
    d.indicators.push_back({"B01", "A", "", "Wrong letter", IndicatorStatus::preliminary, ""});
    d.countries.push_back({"CCC", "Contradiction", false, true, false, ""});
    const auto report = d.validate();
    bool pattern = false;
    bool wrong_letter = false;
    bool contradiction = false;
    for (const auto& violation : report) {
        if (violation.subject == "A3" && violation.kind == ViolationKind::pattern_failure) {
            pattern = true;
        }
        if (violation.subject == "B01" && violation.kind == ViolationKind::field_constraint) {
            wrong_letter = true;
        }
        if (violation.subject == "CCC") {
            contradiction = true;
        }
    }
    CHECK(pattern);
    CHECK(wrong_letter);
    CHECK(contradiction);
}

TEST_CASE("validate_dataset flags sentinel misuse") {
    auto d = consistent_dataset();
    d.scheme.vertical.push_back({"OVA", "Reserved", "OVA"});
    d.correspondences.push_back({"A01", "OTA", "T1"});   // OTA in the vertical slot
    d.correspondences.push_back({"A02", "V1", "OVA"});   // OVA in the transversal slot
    const auto report = d.validate();
    int sentinel = 0;
    for (const auto& violation : report) {
        if (violation.kind == ViolationKind::sentinel_misuse) {
            ++sentinel;
        }
    }
    CHECK(sentinel == 3);
}

TEST_CASE("validate_dataset requires both axis kinds once the scheme is non-empty") {
    auto d = consistent_dataset();
    d.scheme.transversal.clear();
    d.correspondences.clear();
    const auto report = d.validate();
    REQUIRE(report.size() == 1);
    CHECK(report[0].subject == "axis_scheme");
}

TEST_CASE("validate_dataset flags dangling action axis") {
    auto d = consistent_dataset();
    d.scheme.actions.push_back({"ACT-1", "missing-axis", "Do something"});
    const auto report = d.validate();
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == ViolationKind::dangling_reference);
}

TEST_CASE("validate_dataset is order-insensitive over input rows") {
    auto d = consistent_dataset();
    d.matches.push_back({"Z99", "AAA", MatchQuality::full});
    d.indicators.push_back({"A03", "B", "", "Mismatch", IndicatorStatus::preliminary, ""});
    const auto baseline = d.validate();
    std::mt19937 rng(11);
    for (int round = 0; round < 5; ++round) {
        auto shuffled = d;
        std::shuffle(shuffled.indicators.begin(), shuffled.indicators.end(), rng);
        std::shuffle(shuffled.matches.begin(), shuffled.matches.end(), rng);
        std::shuffle(shuffled.correspondences.begin(), shuffled.correspondences.end(), rng);
        const auto report = shuffled.validate();
        REQUIRE(report.size() == baseline.size());
        for (std::size_t i = 0; i < report.size(); ++i) {
            CHECK(report[i].kind == baseline[i].kind);
            CHECK(report[i].subject == baseline[i].subject);
            CHECK(report[i].message == baseline[i].message);
        }
    }
}

TEST_CASE("validate_dataset is idempotent") {
    auto d = consistent_dataset();
    d.matches.push_back({"Z99", "AAA", MatchQuality::full});
    const auto first = d.validate();
    const auto second = d.validate();
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].message == second[i].message);
    }
}
