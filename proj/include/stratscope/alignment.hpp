#pragma once

#include <map>
#include <string>
#include <vector>

#include "stratscope/model.hpp"

// Stage 2: binary correspondence between consolidated indicators and the
// strategy's axis structure, the extended matrix, and its frequency analysis.

namespace stratscope {

struct FrequencyTable {
    // Entry count per cell, keyed (row, column); zero-count cells included.
    std::map<std::pair<std::string, std::string>, int> cell_counts;
    // Distinct indicators per column (vertical axes + OVA).
    std::map<std::string, int> column_totals;
    // Distinct indicators per row (transversal axes + OTA); may be smaller
    // than the row's entry sum when an indicator repeats within the row.
    std::map<std::string, int> row_totals_distinct;
    int total_entries = 0;
};

// Places every correspondence entry in exactly one cell of the
// (T+1) x (V+1) grid. Cell sets are sorted and duplicate-free. Throws
// std::invalid_argument when an entry references an indicator outside the
// consolidated set or an axis id unknown to the scheme.
ExtendedMatrix build_matrix(const std::vector<CorrespondenceEntry>& correspondences,
                            const AxisScheme& axis_scheme,
                            const std::vector<Indicator>& consolidated);

FrequencyTable frequency_table(const ExtendedMatrix& matrix);

// Distinct indicator count per declared axis (sentinels excluded): column
// for vertical axes, row for transversal axes.
std::map<std::string, int> coverage_per_axis(const ExtendedMatrix& matrix);

}  // namespace stratscope
