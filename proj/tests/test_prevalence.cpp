#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stratscope/prevalence.hpp"
#include "testutil.hpp"

using namespace stratscope;

namespace {

std::vector<FrequencyRecord> series(const std::vector<double>& values) {
    std::vector<FrequencyRecord> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string code = "A";
        code += static_cast<char>('0' + (i + 1) / 10);
        code += static_cast<char>('0' + (i + 1) % 10);
        out.push_back({code, values[i]});
    }
    return out;
}

// Independent oracle: per-indicator re-derivation of the label via the
// E[x^2] - mean^2 route in long double. Deliberately separate from the
// implementation's two-pass computation.
PrevalenceLabel oracle_label(const std::vector<double>& values, std::size_t index, StdMode mode) {
    long double sum = 0.0L;
    long double sum_squares = 0.0L;
    for (double v : values) {
        sum += v;
        sum_squares += static_cast<long double>(v) * v;
    }
    const long double n = static_cast<long double>(values.size());
    const long double mean = sum / n;
    long double variance = mode == StdMode::population
                               ? sum_squares / n - mean * mean
                               : (sum_squares - n * mean * mean) / (n - 1.0L);
    if (variance < 0.0L) {
        variance = 0.0L;
    }
    const long double sd = std::sqrt(variance);
    const long double f = values[index];
    if (f >= mean + sd) {
        return PrevalenceLabel::highly_prevalent;
    }
    long double irrelevant = mean - sd;
    if (irrelevant < 0.0L) {
        irrelevant = 0.0L;
    }
    if (f <= irrelevant) {
        return PrevalenceLabel::irrelevant;
    }
    return PrevalenceLabel::prevalent;
}

}  // namespace

TEST_CASE("compute_frequencies weights partial matches") {
    std::vector<Indicator> universe = {
        {"A01", "A", "", "One", IndicatorStatus::preliminary, ""},
        {"A02", "A", "", "Two", IndicatorStatus::preliminary, ""}};
    std::vector<CountryRecord> countries = {{"AAA", "A-land", true, true, false, ""},
                                            {"BBB", "B-land", true, false, false, ""},
                                            {"ZZZ", "No-doc", false, false, false, ""}};
    std::vector<MatchRecord> matches = {{"A01", "AAA", MatchQuality::full},
                                        {"A01", "BBB", MatchQuality::partial},
                                        {"A01", "ZZZ", MatchQuality::full}};
    const auto records = compute_frequencies(universe, matches, countries, 0.5);
    REQUIRE(records.size() == 2);
    CHECK(records[0].indicator == "A01");
    CHECK(records[0].frequency == doctest::Approx(1.5));  // no-document country excluded
    CHECK(records[1].frequency == 0.0);                   // no matches at all
    CHECK_THROWS_AS(compute_frequencies(universe, matches, countries, 1.5), std::invalid_argument);
}

TEST_CASE("compute_frequencies on the fixture reproduces known counts") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    const auto records = compute_frequencies(bundle.preliminary_indicators(), bundle.matches,
                                             bundle.countries, bundle.config.partial_weight);
    CHECK(records.size() == 56);
    double d01 = -1.0;
    double a12 = -1.0;
    for (const auto& r : records) {
        if (r.indicator == "D01") d01 = r.frequency;
        if (r.indicator == "A12") a12 = r.frequency;
    }
    CHECK(d01 == 5.0);
    CHECK(a12 == 0.0);
}

TEST_CASE("compute_stats matches the hand-derived example") {
    const auto stats = compute_stats(series({5, 5, 4, 1, 1, 0, 0, 0}), StdMode::population);
    CHECK(stats.mean == doctest::Approx(2.0));
    CHECK(stats.std_dev == doctest::Approx(std::sqrt(4.5)));  // variance 36/8
    CHECK(stats.hp_threshold == doctest::Approx(2.0 + std::sqrt(4.5)));
    CHECK(stats.irrelevant_threshold == 0.0);
}

TEST_CASE("compute_stats degenerate cases") {
    const auto constant = compute_stats(series({0.3, 0.3, 0.3}), StdMode::population);
    CHECK(constant.mean == 0.3);
    CHECK(constant.std_dev == 0.0);
    CHECK(constant.hp_threshold == 0.3);
    CHECK(constant.irrelevant_threshold == 0.3);

    const auto single = compute_stats(series({3}), StdMode::population);
    CHECK(single.mean == 3.0);
    CHECK(single.std_dev == 0.0);

    CHECK_THROWS_AS(compute_stats({}, StdMode::population), std::invalid_argument);
    CHECK_THROWS_AS(compute_stats(series({3}), StdMode::sample), std::invalid_argument);

    const auto sample = compute_stats(series({2, 4}), StdMode::sample);
    CHECK(sample.std_dev == doctest::Approx(std::sqrt(2.0)));
    const auto population = compute_stats(series({2, 4}), StdMode::population);
    CHECK(population.std_dev == doctest::Approx(1.0));
}

TEST_CASE("classify follows the threshold precedence") {
    const auto values = series({5, 5, 4, 1, 1, 0, 0, 0});
    const auto labels = classify(values, compute_stats(values, StdMode::population));
    const std::vector<PrevalenceLabel> expected = {
        PrevalenceLabel::highly_prevalent, PrevalenceLabel::highly_prevalent,
        PrevalenceLabel::prevalent,        PrevalenceLabel::prevalent,
        PrevalenceLabel::prevalent,        PrevalenceLabel::irrelevant,
        PrevalenceLabel::irrelevant,       PrevalenceLabel::irrelevant};
    REQUIRE(labels.size() == expected.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        CHECK(labels[i].label == expected[i]);
    }
}

TEST_CASE("classify labels an all-equal series highly prevalent") {
    const auto values = series({2, 2, 2, 2});
    const auto labels = classify(values, compute_stats(values, StdMode::population));
    for (const auto& l : labels) {
        CHECK(l.label == PrevalenceLabel::highly_prevalent);
    }
}

TEST_CASE("classify hits an exact boundary") {
    // mean 1, sd 1: f = 2 sits exactly on the HP threshold
    const auto values = series({0, 2});
    const auto labels = classify(values, compute_stats(values, StdMode::population));
    CHECK(labels[0].label == PrevalenceLabel::irrelevant);
    CHECK(labels[1].label == PrevalenceLabel::highly_prevalent);
}

TEST_CASE("fixture classification yields exactly the nine highly prevalent codes") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    const auto frequencies = compute_frequencies(bundle.preliminary_indicators(), bundle.matches,
                                                 bundle.countries, bundle.config.partial_weight);
    const auto labels = classify(frequencies, compute_stats(frequencies, bundle.config.std_mode));
    std::vector<std::string> hp;
    for (const auto& l : labels) {
        if (l.label == PrevalenceLabel::highly_prevalent) {
            hp.push_back(l.indicator);
        }
    }
    CHECK(hp == std::vector<std::string>{"A07", "B01", "B06", "B13", "B17", "C01", "C02", "C03",
                                         "D01"});
}

TEST_CASE("detect_standouts uses a strict comparison") {
    std::vector<CountryRecord> countries = {{"X", "X", true, false, false, ""},
                                            {"Y", "Y", true, false, false, ""},
                                            {"Z", "Z", true, false, false, ""}};
    std::vector<MatchRecord> matches;
    auto add = [&](const std::string& country, int n) {
        for (int i = 0; i < n; ++i) {
            std::string code = "A";
            code += static_cast<char>('0' + (i + 1) / 10);
            code += static_cast<char>('0' + (i + 1) % 10);
            matches.push_back({code, country, MatchQuality::full});
        }
    };
    add("X", 12);
    add("Y", 8);
    add("Z", 2);

    const auto result = detect_standouts(matches, countries, 5);
    CHECK(result.counts.at("X") == 12);
    CHECK(result.standouts == std::vector<std::string>{"X", "Y"});
    CHECK_FALSE(result.auto_threshold);

    // threshold at the maximum count leaves the standout set empty
    CHECK(detect_standouts(matches, countries, 12).standouts.empty());

    const auto auto_result = detect_standouts(matches, countries, std::nullopt);
    CHECK(auto_result.auto_threshold);
    CHECK(auto_result.threshold == doctest::Approx(22.0 / 3.0));
    CHECK(auto_result.standouts == std::vector<std::string>{"X", "Y"});

    CHECK_THROWS_AS(detect_standouts({}, {}, std::nullopt), std::invalid_argument);
    CHECK(detect_standouts({}, {}, 5).standouts.empty());
}

TEST_CASE("fixture standouts are the five indicator-driven strategies") {
    const auto bundle = load_bundle(testutil::ebia_dir());
    const auto result =
        detect_standouts(bundle.matches, bundle.countries, bundle.config.standout_threshold);
    CHECK(result.standouts == std::vector<std::string>{"ARG", "CAN", "DEU", "KOR", "MEX"});
    CHECK(result.threshold == doctest::Approx(5.5));
}

TEST_CASE("stratify_countries applies the strata in order") {
    std::vector<CountryRecord> countries = {
        {"FRA", "France", true, false, true, ""},     // planned
        {"ZAF", "South Africa", false, false, false, ""},  // no document
        {"USE", "Uses", true, true, false, ""},       // systematic via flag
        {"STD", "Standout", true, false, true, ""},   // systematic via standout, despite plans
        {"NON", "Neither", true, false, false, ""}};
    const auto strata = stratify_countries(countries, {"STD"});
    CHECK(strata.at("FRA") == Stratum::planned);
    CHECK(strata.at("ZAF") == Stratum::no_nais);
    CHECK(strata.at("USE") == Stratum::systematic);
    CHECK(strata.at("STD") == Stratum::systematic);
    CHECK(strata.at("NON") == Stratum::neither);
}

TEST_CASE("labels agree with the brute-force oracle on random series") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> length_dist(1, 100);
    std::uniform_int_distribution<int> value_dist(0, 13);
    for (int round = 0; round < 200; ++round) {
        const int n = length_dist(rng);
        std::vector<double> values(n);
        for (auto& v : values) {
            v = static_cast<double>(value_dist(rng));
        }
        const auto records = series(values);
        const auto stats = compute_stats(records, StdMode::population);
        const auto labels = classify(records, stats);
        REQUIRE(labels.size() == values.size());

        for (std::size_t i = 0; i < values.size(); ++i) {
            INFO("round ", round, " index ", i);
            CHECK(labels[i].label == oracle_label(values, i, StdMode::population));
        }
        // monotonicity: higher frequency never gets a lower label
        for (std::size_t i = 0; i < values.size(); ++i) {
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[i] >= values[j]) {
                    CHECK(static_cast<int>(labels[i].label) >= static_cast<int>(labels[j].label));
                }
            }
        }
        // truncation: with sigma >= mean, irrelevant exactly when f == 0;
        // the all-zero series is exempt (boundary precedence labels it HP)
        if (stats.std_dev >= stats.mean && stats.hp_threshold > 0.0) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                CHECK((labels[i].label == PrevalenceLabel::irrelevant) == (values[i] == 0.0));
            }
        }
        // scale covariance with exactly-representable factors
        for (double factor : {2.0, 0.5, 4.0}) {
            auto scaled = values;
            for (auto& v : scaled) {
                v *= factor;
            }
            const auto scaled_records = series(scaled);
            const auto scaled_stats = compute_stats(scaled_records, StdMode::population);
            CHECK(scaled_stats.mean == doctest::Approx(stats.mean * factor));
            CHECK(scaled_stats.std_dev == doctest::Approx(stats.std_dev * factor));
            const auto scaled_labels = classify(scaled_records, scaled_stats);
            for (std::size_t i = 0; i < values.size(); ++i) {
                CHECK(scaled_labels[i].label == labels[i].label);
            }
        }
    }
}

TEST_CASE("sample-mode labels also agree with the oracle") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> length_dist(2, 60);
    std::uniform_int_distribution<int> value_dist(0, 13);
    for (int round = 0; round < 100; ++round) {
        const int n = length_dist(rng);
        std::vector<double> values(n);
        for (auto& v : values) {
            v = static_cast<double>(value_dist(rng));
        }
        const auto records = series(values);
        const auto labels = classify(records, compute_stats(records, StdMode::sample));
        for (std::size_t i = 0; i < values.size(); ++i) {
            CHECK(labels[i].label == oracle_label(values, i, StdMode::sample));
        }
    }
}
