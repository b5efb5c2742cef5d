#include "stratscope/alignment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stratscope {

ExtendedMatrix build_matrix(const std::vector<CorrespondenceEntry>& correspondences,
                            const AxisScheme& axis_scheme,
                            const std::vector<Indicator>& consolidated) {
    ExtendedMatrix matrix;
    for (const auto& axis : axis_scheme.transversal) {
        matrix.rows.push_back(axis.id);
    }
    matrix.rows.emplace_back(kOutsideTransversalAxes);
    for (const auto& axis : axis_scheme.vertical) {
        matrix.columns.push_back(axis.id);
    }
    matrix.columns.emplace_back(kOutsideVerticalAxes);

    const std::set<std::string> row_ids(matrix.rows.begin(), matrix.rows.end());
    const std::set<std::string> column_ids(matrix.columns.begin(), matrix.columns.end());
    std::set<std::string> consolidated_codes;
    for (const auto& ind : consolidated) {
        consolidated_codes.insert(ind.code);
    }

    for (const auto& entry : correspondences) {
        if (consolidated_codes.count(entry.indicator) == 0) {
            throw std::invalid_argument("correspondence references non-consolidated indicator \"" +
                                        entry.indicator + "\"");
        }
        if (column_ids.count(entry.vertical) == 0) {
            throw std::invalid_argument("correspondence references unknown vertical axis \"" +
                                        entry.vertical + "\"");
        }
        if (row_ids.count(entry.transversal) == 0) {
            throw std::invalid_argument("correspondence references unknown transversal axis \"" +
                                        entry.transversal + "\"");
        }
        auto& cell = matrix.cells[{entry.transversal, entry.vertical}];
        if (std::find(cell.begin(), cell.end(), entry.indicator) == cell.end()) {
            cell.push_back(entry.indicator);
        }
    }
    for (auto& [key, cell] : matrix.cells) {
        std::sort(cell.begin(), cell.end());
    }
    return matrix;
}

FrequencyTable frequency_table(const ExtendedMatrix& matrix) {
    FrequencyTable table;
    std::map<std::string, std::set<std::string>> column_sets;
    std::map<std::string, std::set<std::string>> row_sets;
    for (const auto& row : matrix.rows) {
        row_sets[row];
        for (const auto& column : matrix.columns) {
            column_sets[column];
            const auto& cell = matrix.cell(row, column);
            table.cell_counts[{row, column}] = static_cast<int>(cell.size());
            table.total_entries += static_cast<int>(cell.size());
            column_sets[column].insert(cell.begin(), cell.end());
            row_sets[row].insert(cell.begin(), cell.end());
        }
    }
    for (const auto& [column, codes] : column_sets) {
        table.column_totals[column] = static_cast<int>(codes.size());
    }
    for (const auto& [row, codes] : row_sets) {
        table.row_totals_distinct[row] = static_cast<int>(codes.size());
    }
    return table;
}

std::map<std::string, int> coverage_per_axis(const ExtendedMatrix& matrix) {
    std::map<std::string, int> coverage;
    for (const auto& column : matrix.columns) {
        if (column == kOutsideVerticalAxes) {
            continue;
        }
        std::set<std::string> codes;
        for (const auto& row : matrix.rows) {
            const auto& cell = matrix.cell(row, column);
            codes.insert(cell.begin(), cell.end());
        }
        coverage[column] = static_cast<int>(codes.size());
    }
    for (const auto& row : matrix.rows) {
        if (row == kOutsideTransversalAxes) {
            continue;
        }
        std::set<std::string> codes;
        for (const auto& column : matrix.columns) {
            const auto& cell = matrix.cell(row, column);
            codes.insert(cell.begin(), cell.end());
        }
        coverage[row] = static_cast<int>(codes.size());
    }
    return coverage;
}

}  // namespace stratscope
