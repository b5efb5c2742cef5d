#include "stratscope/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace stratscope {

using nlohmann::json;

namespace {

std::string cell_key(const std::string& row, const std::string& column) {
    return row + "|" + column;
}

std::string format_count(int value) { return std::to_string(value); }

// Fixed-width text table for console output.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        widths[i] = header[i].size();
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            const std::string& cell = i < cells.size() ? cells[i] : std::string();
            line += cell;
            if (i + 1 < widths.size()) {
                line.append(widths[i] - cell.size() + 2, ' ');
            }
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        return line + "\n";
    };
    std::string out = emit(header);
    std::string rule;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        rule.append(widths[i], '-');
        if (i + 1 < widths.size()) {
            rule.append(2, ' ');
        }
    }
    out += rule + "\n";
    for (const auto& row : rows) {
        out += emit(row);
    }
    return out;
}

json overflow_json(const OverflowPair& pair) { return json::array({pair.outside, pair.inside}); }

}  // namespace

std::optional<Stage> stage_from_name(std::string_view name) {
    for (Stage stage : kStageOrder) {
        if (to_string(stage) == name) {
            return stage;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::validate: return "validate";
        case Stage::prevalence: return "prevalence";
        case Stage::standout: return "standout";
        case Stage::stratify: return "stratify";
        case Stage::consolidate: return "consolidate";
        case Stage::align: return "align";
        case Stage::patterns: return "patterns";
    }
    return "unknown";
}

double round4(double value) { return std::nearbyint(value * 10000.0) / 10000.0; }

std::string format_fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", round4(value));
    return buf;
}

AnalysisResults run_analysis(const DatasetBundle& bundle) {
    AnalysisResults results;
    const auto preliminary = bundle.preliminary_indicators();
    results.frequencies = compute_frequencies(preliminary, bundle.matches, bundle.countries,
                                              bundle.config.partial_weight);
    results.stats = compute_stats(results.frequencies, bundle.config.std_mode);
    results.labels = classify(results.frequencies, results.stats);
    results.standout =
        detect_standouts(bundle.matches, bundle.countries, bundle.config.standout_threshold);
    results.strata = stratify_countries(bundle.countries, results.standout.standouts);
    results.consolidation = consolidate_bundle(bundle, results.labels);
    results.matrix = build_matrix(bundle.correspondences, bundle.axis_scheme,
                                  results.consolidation.consolidated);
    results.table = frequency_table(results.matrix);
    results.coverage = coverage_per_axis(results.matrix);
    results.patterns = detect_patterns(results.matrix, results.consolidation.consolidated,
                                       results.coverage, bundle.config.min_axis_coverage);
    return results;
}

json config_json(const RunConfig& config) {
    json out;
    out["partial_weight"] = round4(config.partial_weight);
    out["std_mode"] = std::string(to_string(config.std_mode));
    if (config.standout_threshold) {
        out["standout_threshold"] = *config.standout_threshold;
    } else {
        out["standout_threshold"] = "auto";
    }
    out["min_axis_coverage"] = config.min_axis_coverage;
    return out;
}

json stage_json(Stage stage, const DatasetBundle& bundle, const AnalysisResults& results) {
    json out;
    switch (stage) {
        case Stage::validate: {
            out["violations"] = json::array();
            json warnings = json::array();
            for (const auto& w : bundle.warnings) {
                warnings.push_back(w.to_string());
            }
            out["warnings"] = warnings;
            break;
        }
        case Stage::prevalence: {
            json frequencies = json::object();
            for (const auto& r : results.frequencies) {
                frequencies[r.indicator] = round4(r.frequency);
            }
            out["frequencies"] = frequencies;
            out["stats"] = {{"mean", round4(results.stats.mean)},
                            {"std_dev", round4(results.stats.std_dev)},
                            {"hp_threshold", round4(results.stats.hp_threshold)},
                            {"irrelevant_threshold", round4(results.stats.irrelevant_threshold)},
                            {"std_mode", std::string(to_string(bundle.config.std_mode))}};
            json labels = json::object();
            for (const auto& l : results.labels) {
                labels[l.indicator] = std::string(to_string(l.label));
            }
            out["labels"] = labels;
            out["partial_weight"] = round4(bundle.config.partial_weight);
            break;
        }
        case Stage::standout: {
            out["counts"] = results.standout.counts;
            out["threshold"] = round4(results.standout.threshold);
            out["mode"] = results.standout.auto_threshold ? "auto" : "fixed";
            out["standouts"] = results.standout.standouts;
            break;
        }
        case Stage::stratify: {
            json strata = json::object();
            for (const auto& [id, stratum] : results.strata) {
                strata[id] = std::string(to_string(stratum));
            }
            out["strata"] = strata;
            break;
        }
        case Stage::consolidate: {
            out["hp_codes"] = results.consolidation.hp_codes;
            json assigned = json::array();
            for (const auto& ind : results.consolidation.assignment.indicators) {
                assigned.push_back(
                    {{"code", ind.code}, {"dimension", ind.dimension}, {"name", ind.name}});
            }
            out["assigned"] = assigned;
            json new_dimensions = json::array();
            for (const auto& d : results.consolidation.assignment.new_dimensions) {
                new_dimensions.push_back({{"code", d.code}, {"name", d.name}});
            }
            out["new_dimensions"] = new_dimensions;
            json consolidated = json::array();
            for (const auto& ind : results.consolidation.consolidated) {
                consolidated.push_back(
                    {{"code", ind.code}, {"dimension", ind.dimension}, {"name", ind.name}});
            }
            out["consolidated"] = consolidated;
            out["crosscheck"] = {{"performed", results.consolidation.crosschecked},
                                 {"reproduced", results.consolidation.crosschecked &&
                                                    results.consolidation.missing.empty() &&
                                                    results.consolidation.unexpected.empty()},
                                 {"missing", results.consolidation.missing},
                                 {"unexpected", results.consolidation.unexpected}};
            break;
        }
        case Stage::align: {
            json cells = json::object();
            for (const auto& [key, codes] : results.matrix.cells) {
                cells[cell_key(key.first, key.second)] = codes;
            }
            out["matrix"] = {{"rows", results.matrix.rows},
                             {"columns", results.matrix.columns},
                             {"cells", cells}};
            json cell_counts = json::object();
            for (const auto& [key, count] : results.table.cell_counts) {
                cell_counts[cell_key(key.first, key.second)] = count;
            }
            out["frequency_table"] = {{"cell_counts", cell_counts},
                                      {"column_totals", results.table.column_totals},
                                      {"row_totals_distinct", results.table.row_totals_distinct},
                                      {"total_entries", results.table.total_entries}};
            out["coverage"] = results.coverage;
            break;
        }
        case Stage::patterns: {
            out["blind_spot"] = results.patterns.blind_spot.codes;
            out["blind_spot_share"] = round4(results.patterns.blind_spot.share);
            out["vertical_overflow"] = overflow_json(results.patterns.overflow.vertical);
            out["transversal_overflow"] = overflow_json(results.patterns.overflow.transversal);
            json per_axis = json::object();
            for (const auto& [axis, pair] : results.patterns.overflow.per_axis) {
                per_axis[axis] = overflow_json(pair);
            }
            out["per_axis_overflow"] = per_axis;
            out["low_coverage_axes"] = results.patterns.low_coverage_axes;
            out["uncovered_axes"] = results.patterns.uncovered_axes;
            out["min_axis_coverage"] = results.patterns.min_axis_coverage;
            break;
        }
    }
    return out;
}

std::string stage_text(Stage stage, const DatasetBundle& bundle, const AnalysisResults& results) {
    switch (stage) {
        case Stage::validate: {
            std::string out = "dataset valid: 0 violations";
            if (!bundle.warnings.empty()) {
                out += ", " + std::to_string(bundle.warnings.size()) + " warning(s)";
            }
            return out + "\n";
        }
        case Stage::prevalence: {
            std::string out;
            out += "mean frequency:        " + format_fixed4(results.stats.mean) + "\n";
            out += "std deviation (" + std::string(to_string(bundle.config.std_mode)) +
                   "): " + format_fixed4(results.stats.std_dev) + "\n";
            out += "hp threshold:          " + format_fixed4(results.stats.hp_threshold) + "\n";
            out += "irrelevant threshold:  " + format_fixed4(results.stats.irrelevant_threshold) +
                   "\n\n";
            std::vector<std::vector<std::string>> rows;
            for (const auto& l : results.labels) {
                rows.push_back({l.indicator, format_fixed4(l.frequency),
                                std::string(to_string(l.label))});
            }
            out += format_table({"indicator", "frequency", "label"}, rows);
            return out;
        }
        case Stage::standout: {
            std::vector<std::pair<std::string, int>> counts(results.standout.counts.begin(),
                                                            results.standout.counts.end());
            std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
                return std::tie(b.second, a.first) < std::tie(a.second, b.first);
            });
            std::vector<std::vector<std::string>> rows;
            for (const auto& [id, count] : counts) {
                const bool standout =
                    std::find(results.standout.standouts.begin(), results.standout.standouts.end(),
                              id) != results.standout.standouts.end();
                rows.push_back({id, format_count(count), standout ? "standout" : ""});
            }
            std::string out = format_table({"country", "matched", "status"}, rows);
            out += "\nthreshold: " + format_fixed4(results.standout.threshold) + " (" +
                   (results.standout.auto_threshold ? "auto" : "fixed") + ")\n";
            return out;
        }
        case Stage::stratify: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& [id, stratum] : results.strata) {
                rows.push_back({id, std::string(to_string(stratum))});
            }
            return format_table({"country", "stratum"}, rows);
        }
        case Stage::consolidate: {
            std::string out = "highly prevalent preliminary indicators (" +
                              std::to_string(results.consolidation.hp_codes.size()) + "):";
            for (const auto& code : results.consolidation.hp_codes) {
                out += " " + code;
            }
            out += "\n";
            if (!results.consolidation.assignment.new_dimensions.empty()) {
                out += "new dimensions:\n";
                for (const auto& d : results.consolidation.assignment.new_dimensions) {
                    out += "  " + d.code + "  " + d.name + "\n";
                }
            }
            std::vector<std::vector<std::string>> rows;
            for (const auto& ind : results.consolidation.consolidated) {
                rows.push_back({ind.code, ind.name});
            }
            out += format_table({"code", "indicator"}, rows);
            out += "\nconsolidated set size: " +
                   std::to_string(results.consolidation.consolidated.size()) + "\n";
            if (results.consolidation.crosschecked) {
                if (results.consolidation.missing.empty() &&
                    results.consolidation.unexpected.empty()) {
                    out += "cross-check: derived codes reproduce the dataset's consolidated rows\n";
                } else {
                    out += "cross-check: MISMATCH";
                    for (const auto& code : results.consolidation.missing) {
                        out += " -" + code;
                    }
                    for (const auto& code : results.consolidation.unexpected) {
                        out += " +" + code;
                    }
                    out += "\n";
                }
            }
            return out;
        }
        case Stage::align: {
            std::vector<std::string> header{"axis"};
            header.insert(header.end(), results.matrix.columns.begin(),
                          results.matrix.columns.end());
            header.push_back("#ind");
            std::vector<std::vector<std::string>> rows;
            for (const auto& row : results.matrix.rows) {
                std::vector<std::string> cells{row};
                for (const auto& column : results.matrix.columns) {
                    std::string joined;
                    for (const auto& code : results.matrix.cell(row, column)) {
                        if (!joined.empty()) joined += ", ";
                        joined += code;
                    }
                    cells.push_back(joined);
                }
                cells.push_back(format_count(results.table.row_totals_distinct.at(row)));
                rows.push_back(std::move(cells));
            }
            std::vector<std::string> totals{"#ind"};
            for (const auto& column : results.matrix.columns) {
                totals.push_back(format_count(results.table.column_totals.at(column)));
            }
            totals.push_back("");
            rows.push_back(std::move(totals));
            std::string out = format_table(header, rows);
            out += "\ntotal entries: " + std::to_string(results.table.total_entries) + "\n";
            return out;
        }
        case Stage::patterns: {
            std::string out;
            out += "blind spot:";
            if (results.patterns.blind_spot.codes.empty()) {
                out += " (none)";
            }
            for (const auto& code : results.patterns.blind_spot.codes) {
                out += " " + code;
            }
            out += "  (share " + format_fixed4(results.patterns.blind_spot.share) + ")\n";
            out += "vertical overflow (outside:inside):    " +
                   std::to_string(results.patterns.overflow.vertical.outside) + ":" +
                   std::to_string(results.patterns.overflow.vertical.inside) + "\n";
            out += "transversal overflow (outside:inside): " +
                   std::to_string(results.patterns.overflow.transversal.outside) + ":" +
                   std::to_string(results.patterns.overflow.transversal.inside) + "\n";
            std::vector<std::vector<std::string>> rows;
            for (const auto& [axis, pair] : results.patterns.overflow.per_axis) {
                rows.push_back({axis, std::to_string(pair.outside), std::to_string(pair.inside)});
            }
            out += format_table({"vertical axis", "outside", "inside"}, rows);
            out += "low-coverage axes (min " + std::to_string(results.patterns.min_axis_coverage) +
                   "):";
            if (results.patterns.low_coverage_axes.empty()) {
                out += " (none)";
            }
            for (const auto& axis : results.patterns.low_coverage_axes) {
                out += " " + axis + "(" + std::to_string(results.coverage.at(axis)) + ")";
            }
            out += "\nuncovered axes:";
            if (results.patterns.uncovered_axes.empty()) {
                out += " (none)";
            }
            for (const auto& axis : results.patterns.uncovered_axes) {
                out += " " + axis;
            }
            out += "\n";
            return out;
        }
    }
    return {};
}

}  // namespace stratscope
