#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stratscope/alignment.hpp"
#include "stratscope/model.hpp"

// Stage 3: blind-spot detection, inside/outside overflow ratios, and
// coverage-gap flags.

namespace stratscope {

// Raw (outside, inside) entry counts; never reduced.
struct OverflowPair {
    int outside = 0;
    int inside = 0;

    bool operator==(const OverflowPair&) const = default;
};

struct OverflowRatios {
    OverflowPair vertical;     // OVA column vs everything else
    OverflowPair transversal;  // OTA row (minus the corner) vs the interior block
    std::vector<std::pair<std::string, OverflowPair>> per_axis;  // per vertical axis
};

struct BlindSpot {
    std::vector<std::string> codes;  // contents of the (OTA, OVA) corner cell
    double share = 0.0;              // |codes| / |consolidated|
};

struct PatternReport {
    BlindSpot blind_spot;
    OverflowRatios overflow;
    std::vector<std::string> low_coverage_axes;  // coverage < min_axis_coverage
    std::vector<std::string> uncovered_axes;     // coverage == 0
    int min_axis_coverage = 0;
};

// The corner cell (OTA, OVA): indicators completely outside the ideal matrix.
// Throws std::invalid_argument when the consolidated set is empty (the share
// is undefined).
BlindSpot detect_blind_spot(const ExtendedMatrix& matrix,
                            const std::vector<Indicator>& consolidated);

OverflowRatios overflow_ratios(const ExtendedMatrix& matrix);

// Axes below the coverage minimum, and axes with no indicator at all.
// Throws std::invalid_argument when min_axis_coverage < 1.
std::pair<std::vector<std::string>, std::vector<std::string>> flag_coverage(
    const std::map<std::string, int>& coverage, int min_axis_coverage);

PatternReport detect_patterns(const ExtendedMatrix& matrix,
                              const std::vector<Indicator>& consolidated,
                              const std::map<std::string, int>& coverage, int min_axis_coverage);

}  // namespace stratscope
