#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Domain types shared by all analysis stages. Values are immutable after
// construction; every operation in the library is a pure function over them.

namespace stratscope {

// Reserved sentinel ids for the overflow column/row of the extended matrix.
// They may never be declared as axis ids.
inline constexpr std::string_view kOutsideVerticalAxes = "OVA";
inline constexpr std::string_view kOutsideTransversalAxes = "OTA";

enum class DimensionOrigin { preliminary, extension };

struct Dimension {
    std::string code;   // single uppercase letter, unique within a taxonomy
    std::string name;
    DimensionOrigin origin = DimensionOrigin::preliminary;
};

enum class IndicatorStatus { preliminary, proposed, consolidated };

struct Indicator {
    std::string code;        // canonical form: letter + two digits, e.g. "A07"
    std::string dimension;   // dimension code; equals code's leading letter
    std::string area;        // optional
    std::string name;
    IndicatorStatus status = IndicatorStatus::preliminary;
    std::string feasibility_notes;  // optional free text
};

struct CountryRecord {
    std::string id;
    std::string name;
    bool has_document = false;
    bool uses_indicators = false;
    bool plans_indicators = false;
    std::string notes;
};

enum class MatchQuality { full, partial };

struct MatchRecord {
    std::string indicator;  // indicator code
    std::string country;    // country id
    MatchQuality quality = MatchQuality::full;
};

struct FrequencyRecord {
    std::string indicator;
    double frequency = 0.0;  // weighted count of countries, >= 0
};

struct PrevalenceStats {
    double mean = 0.0;
    double std_dev = 0.0;
    double hp_threshold = 0.0;          // mean + std_dev
    double irrelevant_threshold = 0.0;  // max(mean - std_dev, 0)
};

struct Axis {
    std::string id;
    std::string name;
    std::string abbrev;
};

struct StrategicAction {
    std::string action_id;
    std::string axis_id;
    std::string text;
};

struct AxisScheme {
    std::vector<Axis> vertical;     // ordered; order defines matrix columns
    std::vector<Axis> transversal;  // ordered; order defines matrix rows
    std::vector<StrategicAction> actions;  // optional reference data

    bool empty() const { return vertical.empty() && transversal.empty() && actions.empty(); }
};

struct CorrespondenceEntry {
    std::string indicator;    // consolidated indicator code
    std::string vertical;     // vertical axis id or OVA
    std::string transversal;  // transversal axis id or OTA
};

// (T+1) x (V+1) grid of indicator sets: transversal axes plus the OTA row,
// vertical axes plus the OVA column. Cell sets are sorted and duplicate-free.
struct ExtendedMatrix {
    std::vector<std::string> rows;     // transversal axis ids + OTA
    std::vector<std::string> columns;  // vertical axis ids + OVA
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> cells;

    const std::vector<std::string>& cell(const std::string& row, const std::string& column) const;
    int entry_count() const;
};

enum class ViolationKind {
    duplicate_code,
    dangling_reference,
    pattern_failure,
    sentinel_misuse,
    field_constraint,
};

struct Violation {
    ViolationKind kind = ViolationKind::field_constraint;
    std::string subject;  // code / id / pair the violation is about
    std::string message;
};

using ValidationReport = std::vector<Violation>;

std::string_view to_string(ViolationKind kind);

// Thrown by normalize_code for malformed input; `position` is the offset of
// the offending character in the raw string.
class CodeFormatError : public std::runtime_error {
  public:
    CodeFormatError(std::string_view raw, std::size_t position, const std::string& what);
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Canonicalizes an indicator code: uppercase letter + zero-padded two-digit
// number ("a1" -> "A01"). Accepts one or two digits; the number must be >= 1.
std::string normalize_code(std::string_view raw);

// Checks a whole dataset for internal consistency: duplicate codes, dangling
// references, pattern failures and sentinel misuse. Violations are data, not
// failures; the report is sorted and independent of input row order. An empty
// report means the dataset is valid.
ValidationReport validate_dataset(const std::vector<Indicator>& indicators,
                                  const std::vector<Dimension>& dimensions,
                                  const std::vector<CountryRecord>& countries,
                                  const std::vector<MatchRecord>& matches,
                                  const AxisScheme& axis_scheme,
                                  const std::vector<CorrespondenceEntry>& correspondences);

}  // namespace stratscope
