#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratscope/ingest.hpp"
#include "stratscope/model.hpp"

// Stage 1 quantitative steps: indicator frequencies, the three-way prevalence
// classification, standout-strategy detection, and country stratification.

namespace stratscope {

enum class PrevalenceLabel { irrelevant = 0, prevalent = 1, highly_prevalent = 2 };

std::string_view to_string(PrevalenceLabel label);

struct LabeledIndicator {
    std::string indicator;
    double frequency = 0.0;
    PrevalenceLabel label = PrevalenceLabel::irrelevant;
};

struct StandoutResult {
    std::map<std::string, int> counts;  // per document-holding country
    double threshold = 0.0;
    bool auto_threshold = false;
    std::vector<std::string> standouts;  // ids with count strictly above threshold
};

enum class Stratum { no_nais, systematic, planned, neither };

std::string_view to_string(Stratum stratum);

// Weighted per-indicator frequency over the given universe: each full match
// counts 1, each partial match counts partial_weight. Countries without a
// strategy document are excluded. Indicators with no matches get frequency 0.
// Result is sorted by indicator code.
std::vector<FrequencyRecord> compute_frequencies(const std::vector<Indicator>& universe,
                                                 const std::vector<MatchRecord>& matches,
                                                 const std::vector<CountryRecord>& countries,
                                                 double partial_weight);

// Mean, standard deviation and the derived thresholds of a frequency series
// (zeros included). The irrelevant threshold is truncated at zero. Throws
// std::invalid_argument on an empty series, or in sample mode on a
// single-value series.
PrevalenceStats compute_stats(const std::vector<FrequencyRecord>& frequencies, StdMode mode);

// Three-way classification with deterministic precedence at boundary ties:
// HighlyPrevalent if f >= hp_threshold, else Irrelevant if
// f <= irrelevant_threshold, else Prevalent.
std::vector<LabeledIndicator> classify(const std::vector<FrequencyRecord>& frequencies,
                                       const PrevalenceStats& stats);

// Standout strategies: document-holding countries whose matched-indicator
// count is strictly greater than the threshold. Without an explicit threshold
// the mean of the per-country counts is used. Throws std::invalid_argument in
// auto mode when no country holds a document.
StandoutResult detect_standouts(const std::vector<MatchRecord>& matches,
                                const std::vector<CountryRecord>& countries,
                                std::optional<int> threshold);

// Mutually exclusive strata, applied in order: NoNais (no document),
// Systematic (uses indicators or standout), Planned, Neither.
std::map<std::string, Stratum> stratify_countries(const std::vector<CountryRecord>& countries,
                                                  const std::vector<std::string>& standouts);

}  // namespace stratscope
