#include "stratscope/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "stratscope/csv.hpp"

namespace stratscope {

using nlohmann::json;

namespace {

std::string svg_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::string md_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '|') {
            out += "\\|";
        } else {
            out += c;
        }
    }
    return out;
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string join_codes(const std::vector<std::string>& codes, const char* separator) {
    std::string out;
    for (const auto& code : codes) {
        if (!out.empty()) out += separator;
        out += code;
    }
    return out;
}

// Linear interpolation between the light and dark endpoint of the heatmap
// palette; t in [0, 1].
std::string heat_color(double t) {
    static constexpr int start[3] = {0xf7, 0xfb, 0xff};
    static constexpr int end[3] = {0x08, 0x30, 0x6b};
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround(start[0] + (end[0] - start[0]) * t)),
                  static_cast<int>(std::lround(start[1] + (end[1] - start[1]) * t)),
                  static_cast<int>(std::lround(start[2] + (end[2] - start[2]) * t)));
    return buf;
}

constexpr const char* kSvgFont = "font-family=\"Helvetica, Arial, sans-serif\"";

std::string md_table_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& cell : cells) {
        out += " " + cell + " |";
    }
    return out + "\n";
}

std::string md_table(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out = md_table_row(header);
    std::vector<std::string> rule(header.size(), "---");
    out += md_table_row(rule);
    for (const auto& row : rows) {
        out += md_table_row(row);
    }
    return out;
}

}  // namespace

RenderedMatrix render_matrix(const ExtendedMatrix& matrix, const FrequencyTable& table) {
    RenderedMatrix out;

    std::vector<std::string> header{"Axis"};
    for (const auto& column : matrix.columns) {
        header.push_back(md_escape(column));
    }
    header.push_back("#Ind.");
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : matrix.rows) {
        std::vector<std::string> cells{md_escape(row)};
        for (const auto& column : matrix.columns) {
            cells.push_back(md_escape(join_codes(matrix.cell(row, column), ", ")));
        }
        cells.push_back(std::to_string(table.row_totals_distinct.at(row)));
        rows.push_back(std::move(cells));
    }
    std::vector<std::string> totals{"#Ind."};
    for (const auto& column : matrix.columns) {
        totals.push_back(std::to_string(table.column_totals.at(column)));
    }
    totals.push_back("");
    rows.push_back(std::move(totals));
    out.markdown = md_table(header, rows);

    std::string csv_text = "axis";
    for (const auto& column : matrix.columns) {
        csv_text += "," + csv::escape_field(column);
    }
    csv_text += ",distinct_total\n";
    for (const auto& row : matrix.rows) {
        csv_text += csv::escape_field(row);
        for (const auto& column : matrix.columns) {
            csv_text += "," + csv::escape_field(join_codes(matrix.cell(row, column), " "));
        }
        csv_text += "," + std::to_string(table.row_totals_distinct.at(row)) + "\n";
    }
    csv_text += "distinct_total";
    for (const auto& column : matrix.columns) {
        csv_text += "," + std::to_string(table.column_totals.at(column));
    }
    csv_text += ",\n";
    out.csv = csv_text;
    return out;
}

std::string render_heatmap(const ExtendedMatrix& matrix, const FrequencyTable& table) {
    constexpr int cell_w = 92;
    constexpr int cell_h = 52;
    constexpr int left = 120;
    constexpr int top = 72;
    constexpr int right = 76;
    constexpr int bottom = 64;
    const int cols = static_cast<int>(matrix.columns.size());
    const int rows = static_cast<int>(matrix.rows.size());
    const int width = left + cols * cell_w + right;
    const int height = top + rows * cell_h + bottom;

    int max_count = 0;
    for (const auto& [key, count] : table.cell_counts) {
        max_count = std::max(max_count, count);
    }

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" fill=\"#ffffff\"/>\n";
    svg += std::string("<text x=\"") + std::to_string(left) + "\" y=\"28\" " + kSvgFont +
           " font-size=\"16\" fill=\"#1f2430\">Indicator placements per axis intersection</text>\n";

    for (int c = 0; c < cols; ++c) {
        const int x = left + c * cell_w + cell_w / 2;
        svg += "<text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(top - 12) + "\" " +
               kSvgFont + " font-size=\"12\" text-anchor=\"middle\" fill=\"#1f2430\">" +
               svg_escape(matrix.columns[c]) + "</text>\n";
    }
    for (int r = 0; r < rows; ++r) {
        const int y = top + r * cell_h + cell_h / 2 + 4;
        svg += "<text x=\"" + std::to_string(left - 10) + "\" y=\"" + std::to_string(y) + "\" " +
               kSvgFont + " font-size=\"12\" text-anchor=\"end\" fill=\"#1f2430\">" +
               svg_escape(matrix.rows[r]) + "</text>\n";
    }

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int count = table.cell_counts.at({matrix.rows[r], matrix.columns[c]});
            const double t = max_count == 0 ? 0.0 : static_cast<double>(count) / max_count;
            const int x = left + c * cell_w;
            const int y = top + r * cell_h;
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(cell_w) + "\" height=\"" +
                   std::to_string(cell_h) + "\" fill=\"" + heat_color(t) +
                   "\" stroke=\"#c8d0da\" data-row=\"" + svg_escape(matrix.rows[r]) +
                   "\" data-col=\"" + svg_escape(matrix.columns[c]) + "\" data-count=\"" +
                   std::to_string(count) + "\"/>\n";
            svg += "<text x=\"" + std::to_string(x + cell_w / 2) + "\" y=\"" +
                   std::to_string(y + cell_h / 2 + 5) + "\" " + kSvgFont +
                   " font-size=\"14\" text-anchor=\"middle\" fill=\"" +
                   (t > 0.5 ? "#ffffff" : "#1f2430") + "\">" + std::to_string(count) + "</text>\n";
        }
        const int y = top + r * cell_h + cell_h / 2 + 5;
        svg += "<text x=\"" + std::to_string(left + cols * cell_w + 14) + "\" y=\"" +
               std::to_string(y) + "\" " + kSvgFont +
               " font-size=\"13\" fill=\"#1f2430\">" +
               std::to_string(table.row_totals_distinct.at(matrix.rows[r])) + "</text>\n";
    }
    for (int c = 0; c < cols; ++c) {
        const int x = left + c * cell_w + cell_w / 2;
        svg += "<text x=\"" + std::to_string(x) + "\" y=\"" +
               std::to_string(top + rows * cell_h + 22) + "\" " + kSvgFont +
               " font-size=\"13\" text-anchor=\"middle\" fill=\"#1f2430\">" +
               std::to_string(table.column_totals.at(matrix.columns[c])) + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string(left) + "\" y=\"" +
           std::to_string(top + rows * cell_h + 46) + "\" " + kSvgFont +
           " font-size=\"11\" fill=\"#5a6470\">margins: distinct indicators per row/column; " +
           std::to_string(table.total_entries) + " entries in total</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string render_bar_chart(const std::string& title,
                             const std::vector<std::pair<std::string, int>>& items) {
    auto sorted = items;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    constexpr int margin_left = 56;
    constexpr int margin_right = 20;
    constexpr int margin_top = 48;
    constexpr int margin_bottom = 100;
    constexpr int bar_w = 24;
    constexpr int gap = 10;
    constexpr int plot_h = 280;
    const int n = static_cast<int>(sorted.size());
    const int width =
        n == 0 ? 360 : margin_left + gap + n * (bar_w + gap) + margin_right;
    const int height = margin_top + plot_h + margin_bottom;
    const int base_y = margin_top + plot_h;

    int max_value = 0;
    for (const auto& [key, value] : sorted) {
        max_value = std::max(max_value, value);
    }
    const int step = std::max(1, (max_value + 7) / 8);
    const int scale_max = std::max(step, ((max_value + step - 1) / step) * step);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" fill=\"#ffffff\"/>\n";
    svg += std::string("<text x=\"") + std::to_string(margin_left) + "\" y=\"26\" " + kSvgFont +
           " font-size=\"15\" fill=\"#1f2430\">" + svg_escape(title) + "</text>\n";

    for (int tick = 0; tick <= scale_max; tick += step) {
        const double y = base_y - static_cast<double>(tick) / scale_max * plot_h;
        svg += "<line x1=\"" + std::to_string(margin_left) + "\" y1=\"" + fmt1(y) + "\" x2=\"" +
               std::to_string(width - margin_right) + "\" y2=\"" + fmt1(y) +
               "\" stroke=\"#e3e7ec\"/>\n";
        svg += "<text x=\"" + std::to_string(margin_left - 8) + "\" y=\"" + fmt1(y + 4) + "\" " +
               kSvgFont + " font-size=\"11\" text-anchor=\"end\" fill=\"#5a6470\">" +
               std::to_string(tick) + "</text>\n";
    }
    svg += "<line x1=\"" + std::to_string(margin_left) + "\" y1=\"" + std::to_string(margin_top) +
           "\" x2=\"" + std::to_string(margin_left) + "\" y2=\"" + std::to_string(base_y) +
           "\" stroke=\"#5a6470\"/>\n";
    svg += "<line x1=\"" + std::to_string(margin_left) + "\" y1=\"" + std::to_string(base_y) +
           "\" x2=\"" + std::to_string(width - margin_right) + "\" y2=\"" +
           std::to_string(base_y) + "\" stroke=\"#5a6470\"/>\n";

    if (n == 0) {
        svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"" +
               std::to_string(margin_top + plot_h / 2) + "\" " + kSvgFont +
               " font-size=\"13\" text-anchor=\"middle\" fill=\"#5a6470\">no data</text>\n";
        svg += "</svg>\n";
        return svg;
    }

    for (int i = 0; i < n; ++i) {
        const auto& [key, value] = sorted[i];
        const int x = margin_left + gap + i * (bar_w + gap);
        const double bar_h = static_cast<double>(value) / scale_max * plot_h;
        const double y = base_y - bar_h;
        svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + fmt1(y) + "\" width=\"" +
               std::to_string(bar_w) + "\" height=\"" + fmt1(bar_h) +
               "\" fill=\"#4682b4\" data-key=\"" + svg_escape(key) + "\" data-value=\"" +
               std::to_string(value) + "\"/>\n";
        if (value > 0) {
            svg += "<text x=\"" + std::to_string(x + bar_w / 2) + "\" y=\"" + fmt1(y - 5) + "\" " +
                   kSvgFont + " font-size=\"11\" text-anchor=\"middle\" fill=\"#1f2430\">" +
                   std::to_string(value) + "</text>\n";
        }
        const int label_x = x + bar_w / 2 + 4;
        const int label_y = base_y + 14;
        svg += "<text x=\"" + std::to_string(label_x) + "\" y=\"" + std::to_string(label_y) +
               "\" " + kSvgFont +
               " font-size=\"11\" text-anchor=\"end\" fill=\"#1f2430\" transform=\"rotate(-60 " +
               std::to_string(label_x) + " " + std::to_string(label_y) + ")\">" +
               svg_escape(key) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::pair<std::string, std::string> render_bar_charts(const DatasetBundle& bundle) {
    std::set<std::string> counted_countries;
    std::map<std::string, int> per_country;
    for (const auto& c : bundle.countries) {
        if (c.has_document) {
            counted_countries.insert(c.id);
            per_country[c.id] = 0;
        }
    }
    std::map<std::string, int> per_indicator;
    for (const auto& ind : bundle.preliminary_indicators()) {
        per_indicator[ind.code] = 0;
    }
    for (const auto& m : bundle.matches) {
        if (counted_countries.count(m.country) == 0) {
            continue;
        }
        if (auto it = per_indicator.find(m.indicator); it != per_indicator.end()) {
            ++it->second;
            ++per_country[m.country];
        }
    }
    const std::string countries_chart = render_bar_chart(
        "Matched indicators per national strategy",
        {per_country.begin(), per_country.end()});
    const std::string indicators_chart = render_bar_chart(
        "Countries matching each preliminary indicator",
        {per_indicator.begin(), per_indicator.end()});
    return {countries_chart, indicators_chart};
}

std::vector<ReferenceCheck> reference_checks(const DatasetBundle& bundle,
                                             const AnalysisResults& results) {
    std::vector<ReferenceCheck> checks;
    const ReferenceTotals& ref = bundle.reference;

    for (const auto& [axis, expected] : ref.column_totals) {
        ReferenceCheck check;
        check.name = "column_totals[" + axis + "]";
        check.reference = expected;
        auto it = results.table.column_totals.find(axis);
        if (it != results.table.column_totals.end()) {
            check.derived = it->second;
            check.match = it->second == expected;
        }
        checks.push_back(std::move(check));
    }
    for (const auto& [axis, expected] : ref.row_distinct_totals) {
        ReferenceCheck check;
        check.name = "row_distinct_totals[" + axis + "]";
        check.reference = expected;
        auto it = results.table.row_totals_distinct.find(axis);
        if (it != results.table.row_totals_distinct.end()) {
            check.derived = it->second;
            check.match = it->second == expected;
        }
        checks.push_back(std::move(check));
    }
    if (ref.vertical_overflow) {
        const auto& pair = results.patterns.overflow.vertical;
        checks.push_back({"vertical_overflow", json::array({pair.outside, pair.inside}),
                          json::array({ref.vertical_overflow->first, ref.vertical_overflow->second}),
                          pair.outside == ref.vertical_overflow->first &&
                              pair.inside == ref.vertical_overflow->second});
    }
    if (ref.transversal_overflow) {
        const auto& pair = results.patterns.overflow.transversal;
        checks.push_back(
            {"transversal_overflow", json::array({pair.outside, pair.inside}),
             json::array({ref.transversal_overflow->first, ref.transversal_overflow->second}),
             pair.outside == ref.transversal_overflow->first &&
                 pair.inside == ref.transversal_overflow->second});
    }
    if (ref.blind_spot) {
        auto expected = *ref.blind_spot;
        std::sort(expected.begin(), expected.end());
        checks.push_back({"blind_spot", results.patterns.blind_spot.codes, expected,
                          results.patterns.blind_spot.codes == expected});
    }
    if (ref.blind_spot_share) {
        const double derived = round4(results.patterns.blind_spot.share);
        const double expected = round4(*ref.blind_spot_share);
        checks.push_back({"blind_spot_share", derived, expected, derived == expected});
    }
    return checks;
}

FullReport render_full_report(const DatasetBundle& bundle, const AnalysisResults& results) {
    FullReport report;
    std::string& md = report.markdown;

    int with_document = 0;
    for (const auto& c : bundle.countries) {
        if (c.has_document) ++with_document;
    }
    const auto preliminary = bundle.preliminary_indicators();

    md += "# Strategy monitoring report\n\n";
    md += "Dataset: " + std::to_string(preliminary.size()) + " preliminary indicators, " +
          std::to_string(bundle.countries.size()) + " countries (" +
          std::to_string(with_document) + " with a strategy document), " +
          std::to_string(bundle.matches.size()) + " matches, " +
          std::to_string(bundle.axis_scheme.vertical.size()) + " vertical and " +
          std::to_string(bundle.axis_scheme.transversal.size()) + " transversal axes, " +
          std::to_string(bundle.correspondences.size()) + " correspondence entries.\n\n";

    md += "## Stage 1 - Indicator prevalence\n\n";
    md += "| Statistic | Value |\n| --- | --- |\n";
    md += "| Mean frequency | " + format_fixed4(results.stats.mean) + " |\n";
    md += "| Standard deviation (" + std::string(to_string(bundle.config.std_mode)) + ") | " +
          format_fixed4(results.stats.std_dev) + " |\n";
    md += "| Highly-prevalent threshold | " + format_fixed4(results.stats.hp_threshold) + " |\n";
    md += "| Irrelevant threshold | " + format_fixed4(results.stats.irrelevant_threshold) +
          " |\n";
    md += "| Partial-match weight | " + format_fixed4(bundle.config.partial_weight) + " |\n\n";

    md += "### Classification\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& l : results.labels) {
            rows.push_back({l.indicator, format_fixed4(l.frequency),
                            std::string(to_string(l.label))});
        }
        md += md_table({"Indicator", "Frequency", "Label"}, rows) + "\n";
    }

    md += "### Standout strategies\n\n";
    {
        std::vector<std::pair<std::string, int>> counts(results.standout.counts.begin(),
                                                        results.standout.counts.end());
        std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        std::vector<std::vector<std::string>> rows;
        for (const auto& [id, count] : counts) {
            const bool standout =
                std::find(results.standout.standouts.begin(), results.standout.standouts.end(),
                          id) != results.standout.standouts.end();
            rows.push_back({id, std::to_string(count), standout ? "standout" : ""});
        }
        md += md_table({"Country", "Matched indicators", "Status"}, rows);
        md += "\nThreshold: " + format_fixed4(results.standout.threshold) + " (" +
              (results.standout.auto_threshold ? "auto: mean of counts" : "fixed") + ").\n\n";
    }

    md += "### Strata\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [id, stratum] : results.strata) {
            rows.push_back({id, std::string(to_string(stratum))});
        }
        md += md_table({"Country", "Stratum"}, rows) + "\n";
    }

    md += "### Consolidation\n\n";
    md += "Highly prevalent preliminary indicators (" +
          std::to_string(results.consolidation.hp_codes.size()) + "): " +
          join_codes(results.consolidation.hp_codes, ", ") + ".\n\n";
    if (!results.consolidation.assignment.new_dimensions.empty()) {
        md += "New dimensions:\n\n";
        for (const auto& d : results.consolidation.assignment.new_dimensions) {
            md += "- " + d.code + ": " + md_escape(d.name) + "\n";
        }
        md += "\n";
    }
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& ind : results.consolidation.consolidated) {
            rows.push_back({ind.code, md_escape(ind.name)});
        }
        md += md_table({"Code", "Indicator"}, rows);
        md += "\nConsolidated set size: " +
              std::to_string(results.consolidation.consolidated.size()) + ".\n";
        if (results.consolidation.crosschecked) {
            if (results.consolidation.missing.empty() &&
                results.consolidation.unexpected.empty()) {
                md += "Code assignment reproduces the dataset's consolidated rows.\n";
            } else {
                md += "> **Consolidation mismatch:** derivation differs from the dataset's "
                      "consolidated rows (missing: " +
                      join_codes(results.consolidation.missing, ", ") + "; unexpected: " +
                      join_codes(results.consolidation.unexpected, ", ") + ").\n";
            }
        }
        md += "\n";
    }

    md += "## Stage 2 - Axis alignment\n\n";
    const RenderedMatrix rendered = render_matrix(results.matrix, results.table);
    md += "### Extended matrix\n\n" + rendered.markdown + "\n";
    md += "Marginal counts are distinct indicators per row/column; the grid holds " +
          std::to_string(results.table.total_entries) + " entries in total.\n\n";
    md += "### Cell counts\n\n";
    {
        std::vector<std::string> header{"Axis"};
        for (const auto& column : results.matrix.columns) {
            header.push_back(md_escape(column));
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : results.matrix.rows) {
            std::vector<std::string> cells{md_escape(row)};
            for (const auto& column : results.matrix.columns) {
                cells.push_back(std::to_string(results.table.cell_counts.at({row, column})));
            }
            rows.push_back(std::move(cells));
        }
        md += md_table(header, rows) + "\n";
    }
    md += "### Coverage per axis\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [axis, count] : results.coverage) {
            rows.push_back({md_escape(axis), std::to_string(count)});
        }
        md += md_table({"Axis", "Distinct indicators"}, rows) + "\n";
    }

    md += "## Stage 3 - Patterns\n\n";
    md += "- Blind spot (OTA, OVA): " +
          (results.patterns.blind_spot.codes.empty()
               ? std::string("none")
               : join_codes(results.patterns.blind_spot.codes, ", ")) +
          " - share " + format_fixed4(results.patterns.blind_spot.share) +
          " of the consolidated set.\n";
    md += "- Vertical overflow (outside:inside): " +
          std::to_string(results.patterns.overflow.vertical.outside) + ":" +
          std::to_string(results.patterns.overflow.vertical.inside) + ".\n";
    md += "- Transversal overflow (outside:inside): " +
          std::to_string(results.patterns.overflow.transversal.outside) + ":" +
          std::to_string(results.patterns.overflow.transversal.inside) + ".\n";
    md += "- Low-coverage axes (minimum " + std::to_string(results.patterns.min_axis_coverage) +
          "): " +
          (results.patterns.low_coverage_axes.empty()
               ? std::string("none")
               : join_codes(results.patterns.low_coverage_axes, ", ")) +
          ".\n";
    md += "- Uncovered axes: " +
          (results.patterns.uncovered_axes.empty()
               ? std::string("none")
               : join_codes(results.patterns.uncovered_axes, ", ")) +
          ".\n\n";
    md += "### Per-axis overflow\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [axis, pair] : results.patterns.overflow.per_axis) {
            rows.push_back({md_escape(axis), std::to_string(pair.outside),
                            std::to_string(pair.inside)});
        }
        md += md_table({"Vertical axis", "Outside entries", "Inside entries"}, rows) + "\n";
    }

    const auto checks = reference_checks(bundle, results);
    if (!checks.empty()) {
        md += "### Reference cross-checks\n\n";
        for (const auto& check : checks) {
            const std::string derived = check.derived.is_null() ? "n/a" : check.derived.dump();
            const std::string reference = check.reference.dump();
            if (check.match) {
                md += "- `" + check.name + "`: derived `" + derived +
                      "` matches the recorded reference.\n";
            } else {
                md += "> **Erratum check:** `" + check.name + "` derived `" + derived +
                      "` differs from the recorded reference `" + reference + "`.\n";
            }
        }
        md += "\n";
    }

    json& doc = report.json;
    doc["config"] = config_json(bundle.config);
    doc["dataset"] = {{"preliminary_indicators", preliminary.size()},
                      {"countries", bundle.countries.size()},
                      {"countries_with_document", with_document},
                      {"matches", bundle.matches.size()},
                      {"vertical_axes", bundle.axis_scheme.vertical.size()},
                      {"transversal_axes", bundle.axis_scheme.transversal.size()},
                      {"correspondences", bundle.correspondences.size()}};
    doc["stage1"] = {{"prevalence", stage_json(Stage::prevalence, bundle, results)},
                     {"standout", stage_json(Stage::standout, bundle, results)},
                     {"strata", stage_json(Stage::stratify, bundle, results)["strata"]},
                     {"consolidation", stage_json(Stage::consolidate, bundle, results)}};
    doc["stage2"] = stage_json(Stage::align, bundle, results);
    doc["stage3"] = stage_json(Stage::patterns, bundle, results);
    json checks_json = json::array();
    for (const auto& check : checks) {
        checks_json.push_back({{"name", check.name},
                               {"derived", check.derived},
                               {"reference", check.reference},
                               {"match", check.match}});
    }
    doc["reference_checks"] = checks_json;
    return report;
}

json write_reports(const DatasetBundle& bundle, const AnalysisResults& results,
                   const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) {
        throw DatasetError(DatasetError::Kind::io,
                           {{Diagnostic::Severity::error, out_dir.string(), 0,
                             "output directory cannot be created"}});
    }
    auto write_file = [&](const std::string& name, const std::string& contents) {
        std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
        out << contents;
        if (!out.good()) {
            throw DatasetError(DatasetError::Kind::io, {{Diagnostic::Severity::error, name, 0,
                                                         "unable to write file"}});
        }
    };

    const FullReport report = render_full_report(bundle, results);
    const RenderedMatrix matrix = render_matrix(results.matrix, results.table);
    const auto [countries_svg, indicators_svg] = render_bar_charts(bundle);

    write_file("report.md", report.markdown);
    write_file("report.json", report.json.dump(2) + "\n");
    write_file("matrix.csv", matrix.csv);
    write_file("heatmap.svg", render_heatmap(results.matrix, results.table));
    write_file("countries.svg", countries_svg);
    write_file("indicators.svg", indicators_svg);

    json manifest = json::array();
    manifest.push_back({{"file", "countries.svg"}, {"roles", json::array({"standout_chart"})}});
    manifest.push_back({{"file", "heatmap.svg"}, {"roles", json::array({"matrix_heatmap"})}});
    manifest.push_back({{"file", "indicators.svg"}, {"roles", json::array({"indicator_chart"})}});
    manifest.push_back(
        {{"file", "matrix.csv"}, {"roles", json::array({"matrix_table", "frequency_table"})}});
    manifest.push_back(
        {{"file", "report.json"}, {"roles", json::array({"full_report", "pattern_summary"})}});
    manifest.push_back({{"file", "report.md"},
                        {"roles", json::array({"full_report", "prevalence_table",
                                               "frequency_table", "pattern_summary"})}});
    write_file("manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace stratscope
