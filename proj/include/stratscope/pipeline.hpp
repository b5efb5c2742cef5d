#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stratscope/alignment.hpp"
#include "stratscope/consolidate.hpp"
#include "stratscope/ingest.hpp"
#include "stratscope/patterns.hpp"
#include "stratscope/prevalence.hpp"

// Runs the analysis stages over a loaded bundle and renders per-stage results
// as JSON (machine) and text tables (console).

namespace stratscope {

struct AnalysisResults {
    std::vector<FrequencyRecord> frequencies;
    PrevalenceStats stats;
    std::vector<LabeledIndicator> labels;
    StandoutResult standout;
    std::map<std::string, Stratum> strata;
    ConsolidationResult consolidation;
    ExtendedMatrix matrix;
    FrequencyTable table;
    std::map<std::string, int> coverage;
    PatternReport patterns;
};

enum class Stage { validate, prevalence, standout, stratify, consolidate, align, patterns };

inline constexpr Stage kStageOrder[] = {Stage::validate,    Stage::prevalence, Stage::standout,
                                        Stage::stratify,    Stage::consolidate, Stage::align,
                                        Stage::patterns};

std::optional<Stage> stage_from_name(std::string_view name);
std::string_view to_string(Stage stage);

AnalysisResults run_analysis(const DatasetBundle& bundle);

// All real-valued outputs are quantized to four decimals (half-even) before
// rendering, so markdown and JSON carry identical values.
double round4(double value);
std::string format_fixed4(double value);

nlohmann::json config_json(const RunConfig& config);
nlohmann::json stage_json(Stage stage, const DatasetBundle& bundle, const AnalysisResults& results);
std::string stage_text(Stage stage, const DatasetBundle& bundle, const AnalysisResults& results);

}  // namespace stratscope
