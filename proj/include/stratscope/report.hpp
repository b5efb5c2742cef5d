#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stratscope/pipeline.hpp"

// Deterministic renderers: markdown tables, CSV cross-tab, self-contained SVG
// figures, and the full report document. Identical inputs produce identical
// bytes.

namespace stratscope {

struct RenderedMatrix {
    std::string markdown;
    std::string csv;
};

// The (T+1) x (V+1) grid with sorted codes per cell and marginal counts.
RenderedMatrix render_matrix(const ExtendedMatrix& matrix, const FrequencyTable& table);

// Grid heatmap of cell entry counts, shade proportional to count, count
// printed in each cell, marginal totals outside the shaded area.
std::string render_heatmap(const ExtendedMatrix& matrix, const FrequencyTable& table);

// One vertical bar chart; bars sorted by value descending, then key. An empty
// item list renders a placeholder with axes only.
std::string render_bar_chart(const std::string& title,
                             const std::vector<std::pair<std::string, int>>& items);

// (per-country indicator counts, per-indicator country counts), from the raw
// match grid over document-holding countries.
std::pair<std::string, std::string> render_bar_charts(const DatasetBundle& bundle);

// Cross-check of derived values against the dataset's recorded reference
// totals; any mismatch is rendered as an erratum callout.
struct ReferenceCheck {
    std::string name;
    nlohmann::json derived;
    nlohmann::json reference;
    bool match = false;
};

std::vector<ReferenceCheck> reference_checks(const DatasetBundle& bundle,
                                             const AnalysisResults& results);

struct FullReport {
    std::string markdown;
    nlohmann::json json;  // mirrors every number in the markdown
};

FullReport render_full_report(const DatasetBundle& bundle, const AnalysisResults& results);

// Writes report.md, report.json, matrix.csv, heatmap.svg, countries.svg,
// indicators.svg and manifest.json into out_dir; returns the manifest.
nlohmann::json write_reports(const DatasetBundle& bundle, const AnalysisResults& results,
                             const std::filesystem::path& out_dir);

}  // namespace stratscope
