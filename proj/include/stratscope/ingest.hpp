#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratscope/model.hpp"

namespace stratscope {

enum class StdMode { population, sample };

// Effective analysis parameters. Precedence: built-in defaults, then
// config.json, then caller overrides (CLI flags).
struct RunConfig {
    double partial_weight = 1.0;
    StdMode std_mode = StdMode::population;
    std::optional<int> standout_threshold;  // nullopt = auto (mean of counts)
    int min_axis_coverage = 3;
};

// An indicator proposal harvested from a standout strategy. Entries sharing
// an alias_group are near-duplicates to be merged; row order is meaningful
// (it pins the code-assignment order).
struct ProposedIndicator {
    std::string name;
    std::string target_dimension;  // existing dimension code or new-dimension name
    std::vector<std::string> source_countries;
    std::string alias_group;  // empty = no group
    bool accepted = false;
};

// Published totals recorded alongside a dataset so reports can cross-check
// derived values against them and surface divergences.
struct ReferenceTotals {
    std::map<std::string, int> column_totals;
    std::map<std::string, int> row_distinct_totals;
    std::optional<std::pair<int, int>> vertical_overflow;    // (outside, inside)
    std::optional<std::pair<int, int>> transversal_overflow;  // (outside, inside)
    std::optional<std::vector<std::string>> blind_spot;
    std::optional<double> blind_spot_share;

    bool empty() const {
        return column_totals.empty() && row_distinct_totals.empty() && !vertical_overflow &&
               !transversal_overflow && !blind_spot && !blind_spot_share;
    }
};

struct Diagnostic {
    enum class Severity { warning, error };
    Severity severity = Severity::error;
    std::string file;
    int line = 0;  // 0 = whole file
    std::string message;

    std::string to_string() const;
};

class DatasetError : public std::runtime_error {
  public:
    enum class Kind { io, data };

    DatasetError(Kind kind, std::vector<Diagnostic> diagnostics);
    Kind kind() const { return kind_; }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  private:
    Kind kind_;
    std::vector<Diagnostic> diagnostics_;
};

// A fully parsed and validated dataset. All codes are canonical and
// validate_dataset reports zero violations by the time a bundle exists.
struct DatasetBundle {
    std::vector<Dimension> dimensions;
    std::vector<Indicator> indicators;
    std::vector<CountryRecord> countries;
    std::vector<MatchRecord> matches;
    AxisScheme axis_scheme;
    std::vector<CorrespondenceEntry> correspondences;
    std::vector<ProposedIndicator> proposals;
    bool has_proposals = false;
    RunConfig config;
    ReferenceTotals reference;
    std::vector<Diagnostic> warnings;  // non-fatal findings from loading

    // Indicators that take part in the prevalence analysis (status=preliminary).
    std::vector<Indicator> preliminary_indicators() const;
    // Pre-assigned consolidated rows, if the dataset carries them.
    std::vector<Indicator> consolidated_rows() const;
    const Indicator* find_indicator(const std::string& code) const;
    const CountryRecord* find_country(const std::string& id) const;
};

// Loads the dataset directory. The six CSV files are required; config.json,
// proposals.csv and reference.json are optional. Throws DatasetError with all
// row-level diagnostics and validation violations aggregated together.
DatasetBundle load_bundle(const std::filesystem::path& data_dir);

// Writes a bundle back to disk in canonical form (codes sorted, fields
// normalized). Loading the result yields an equivalent bundle and a second
// export is byte-identical.
void export_bundle(const DatasetBundle& bundle, const std::filesystem::path& out_dir);

std::string_view to_string(StdMode mode);
StdMode std_mode_from_string(std::string_view text);  // throws std::invalid_argument

}  // namespace stratscope
