#include "stratscope/patterns.hpp"

#include <stdexcept>

namespace stratscope {

BlindSpot detect_blind_spot(const ExtendedMatrix& matrix,
                            const std::vector<Indicator>& consolidated) {
    if (consolidated.empty()) {
        throw std::invalid_argument("blind-spot share is undefined for an empty consolidated set");
    }
    BlindSpot result;
    result.codes = matrix.cell(std::string(kOutsideTransversalAxes),
                               std::string(kOutsideVerticalAxes));
    result.share =
        static_cast<double>(result.codes.size()) / static_cast<double>(consolidated.size());
    return result;
}

OverflowRatios overflow_ratios(const ExtendedMatrix& matrix) {
    OverflowRatios ratios;
    for (const auto& column : matrix.columns) {
        if (column == kOutsideVerticalAxes) {
            continue;
        }
        ratios.per_axis.push_back({column, {}});
    }
    for (const auto& [key, cell] : matrix.cells) {
        const auto& [row, column] = key;
        const int entries = static_cast<int>(cell.size());
        const bool outside_row = row == kOutsideTransversalAxes;
        const bool outside_column = column == kOutsideVerticalAxes;
        if (outside_column) {
            ratios.vertical.outside += entries;
        } else {
            ratios.vertical.inside += entries;
        }
        if (!outside_column) {
            if (outside_row) {
                ratios.transversal.outside += entries;
            } else {
                ratios.transversal.inside += entries;
            }
            for (auto& [axis, pair] : ratios.per_axis) {
                if (axis == column) {
                    (outside_row ? pair.outside : pair.inside) += entries;
                    break;
                }
            }
        }
    }
    return ratios;
}

std::pair<std::vector<std::string>, std::vector<std::string>> flag_coverage(
    const std::map<std::string, int>& coverage, int min_axis_coverage) {
    if (min_axis_coverage < 1) {
        throw std::invalid_argument("min_axis_coverage must be >= 1");
    }
    std::vector<std::string> low;
    std::vector<std::string> uncovered;
    for (const auto& [axis, count] : coverage) {
        if (count < min_axis_coverage) {
            low.push_back(axis);
        }
        if (count == 0) {
            uncovered.push_back(axis);
        }
    }
    return {low, uncovered};
}

PatternReport detect_patterns(const ExtendedMatrix& matrix,
                              const std::vector<Indicator>& consolidated,
                              const std::map<std::string, int>& coverage, int min_axis_coverage) {
    PatternReport report;
    report.blind_spot = detect_blind_spot(matrix, consolidated);
    report.overflow = overflow_ratios(matrix);
    auto [low, uncovered] = flag_coverage(coverage, min_axis_coverage);
    report.low_coverage_axes = std::move(low);
    report.uncovered_axes = std::move(uncovered);
    report.min_axis_coverage = min_axis_coverage;
    return report;
}

}  // namespace stratscope
