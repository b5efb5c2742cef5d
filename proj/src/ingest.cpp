#include "stratscope/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stratscope/csv.hpp"

namespace stratscope {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDimensionsFile = "dimensions.csv";
constexpr const char* kIndicatorsFile = "indicators.csv";
constexpr const char* kCountriesFile = "countries.csv";
constexpr const char* kMatchesFile = "matches.csv";
constexpr const char* kAxesFile = "axes.csv";
constexpr const char* kCorrespondencesFile = "correspondences.csv";
constexpr const char* kConfigFile = "config.json";
constexpr const char* kProposalsFile = "proposals.csv";
constexpr const char* kReferenceFile = "reference.json";

const char* const kRequiredFiles[] = {kDimensionsFile, kIndicatorsFile, kCountriesFile,
                                      kMatchesFile,    kAxesFile,       kCorrespondencesFile};

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

class DiagnosticSink {
  public:
    void error(const std::string& file, int line, std::string message) {
        diagnostics_.push_back({Diagnostic::Severity::error, file, line, std::move(message)});
        ++error_count_;
    }
    void warning(const std::string& file, int line, std::string message) {
        diagnostics_.push_back({Diagnostic::Severity::warning, file, line, std::move(message)});
    }
    bool has_errors() const { return error_count_ > 0; }
    std::vector<Diagnostic> take() { return std::move(diagnostics_); }
    std::vector<Diagnostic> warnings_only() const {
        std::vector<Diagnostic> out;
        for (const auto& d : diagnostics_) {
            if (d.severity == Diagnostic::Severity::warning) {
                out.push_back(d);
            }
        }
        return out;
    }

  private:
    std::vector<Diagnostic> diagnostics_;
    int error_count_ = 0;
};

// Resolves header names to column indices once per file and reports unknown
// extra columns as warnings.
class ColumnMap {
  public:
    ColumnMap(const csv::Table& table, const std::string& file,
              const std::vector<std::string>& expected, DiagnosticSink& sink)
        : table_(table), file_(file) {
        for (const auto& name : expected) {
            auto idx = table.column(name);
            if (!idx) {
                sink.error(file, 1, "missing required column \"" + name + "\"");
                ok_ = false;
            } else {
                indices_[name] = *idx;
            }
        }
        for (const auto& name : table.header) {
            if (std::find(expected.begin(), expected.end(), name) == expected.end()) {
                sink.warning(file, 1, "ignoring unknown column \"" + name + "\"");
            }
        }
    }

    bool ok() const { return ok_; }

    // Field access for a row; ragged rows yield empty strings for the
    // missing tail (callers decide whether that is an error).
    std::string get(const csv::Row& row, const std::string& name) const {
        auto it = indices_.find(name);
        if (it == indices_.end() || it->second >= row.fields.size()) {
            return {};
        }
        return row.fields[it->second];
    }

    bool row_width_ok(const csv::Row& row) const {
        return row.fields.size() == table_.header.size();
    }

  private:
    const csv::Table& table_;
    std::string file_;
    std::map<std::string, std::size_t> indices_;
    bool ok_ = true;
};

std::optional<bool> parse_bool(const std::string& raw) {
    const std::string v = to_lower(trim(raw));
    if (v == "true") return true;
    if (v == "false") return false;
    return std::nullopt;
}

std::optional<csv::Table> read_table(const fs::path& dir, const char* file, DiagnosticSink& sink) {
    std::ifstream in(dir / file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) {
        sink.error(file, 0, "unable to read file");
        return std::nullopt;
    }
    try {
        return csv::parse(buf.str());
    } catch (const csv::ParseError& e) {
        sink.error(file, e.line(), e.what());
        return std::nullopt;
    }
}

template <typename Fn>
void for_each_row(const csv::Table& table, const ColumnMap& columns, const std::string& file,
                  DiagnosticSink& sink, Fn&& fn) {
    if (!columns.ok()) {
        return;
    }
    for (const auto& row : table.rows) {
        if (!columns.row_width_ok(row)) {
            sink.error(file, row.line,
                       "row has " + std::to_string(row.fields.size()) + " fields, expected " +
                           std::to_string(table.header.size()));
            continue;
        }
        fn(row);
    }
}

void parse_config(const fs::path& path, RunConfig& config, DiagnosticSink& sink) {
    std::ifstream in(path, std::ios::binary);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        sink.error(kConfigFile, 0, std::string("invalid JSON: ") + e.what());
        return;
    }
    if (!doc.is_object()) {
        sink.error(kConfigFile, 0, "top-level value must be an object");
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "partial_weight") {
            if (!value.is_number() || value.get<double>() < 0.0 || value.get<double>() > 1.0) {
                sink.error(kConfigFile, 0, "partial_weight must be a number in [0, 1]");
            } else {
                config.partial_weight = value.get<double>();
            }
        } else if (key == "std_mode") {
            const std::string mode = value.is_string() ? value.get<std::string>() : "";
            if (mode == "population") {
                config.std_mode = StdMode::population;
            } else if (mode == "sample") {
                config.std_mode = StdMode::sample;
            } else {
                sink.error(kConfigFile, 0, "std_mode must be \"population\" or \"sample\"");
            }
        } else if (key == "standout_threshold") {
            if (value.is_string() && value.get<std::string>() == "auto") {
                config.standout_threshold.reset();
            } else if (value.is_number_integer()) {
                config.standout_threshold = value.get<int>();
            } else {
                sink.error(kConfigFile, 0, "standout_threshold must be an integer or \"auto\"");
            }
        } else if (key == "min_axis_coverage") {
            if (!value.is_number_integer() || value.get<int>() < 1) {
                sink.error(kConfigFile, 0, "min_axis_coverage must be an integer >= 1");
            } else {
                config.min_axis_coverage = value.get<int>();
            }
        } else {
            sink.warning(kConfigFile, 0, "ignoring unknown key \"" + key + "\"");
        }
    }
}

void parse_reference(const fs::path& path, ReferenceTotals& reference, DiagnosticSink& sink) {
    std::ifstream in(path, std::ios::binary);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        sink.error(kReferenceFile, 0, std::string("invalid JSON: ") + e.what());
        return;
    }
    if (!doc.is_object()) {
        sink.error(kReferenceFile, 0, "top-level value must be an object");
        return;
    }
    auto parse_pair = [&](const json& value, const char* key) -> std::optional<std::pair<int, int>> {
        if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
            !value[1].is_number_integer()) {
            sink.error(kReferenceFile, 0,
                       std::string(key) + " must be a two-element integer array [outside, inside]");
            return std::nullopt;
        }
        return std::make_pair(value[0].get<int>(), value[1].get<int>());
    };
    auto parse_count_map = [&](const json& value, const char* key,
                               std::map<std::string, int>& out) {
        if (!value.is_object()) {
            sink.error(kReferenceFile, 0, std::string(key) + " must be an object of integers");
            return;
        }
        for (const auto& [axis, count] : value.items()) {
            if (!count.is_number_integer()) {
                sink.error(kReferenceFile, 0,
                           std::string(key) + "[\"" + axis + "\"] must be an integer");
            } else {
                out[axis] = count.get<int>();
            }
        }
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "column_totals") {
            parse_count_map(value, "column_totals", reference.column_totals);
        } else if (key == "row_distinct_totals") {
            parse_count_map(value, "row_distinct_totals", reference.row_distinct_totals);
        } else if (key == "vertical_overflow") {
            reference.vertical_overflow = parse_pair(value, "vertical_overflow");
        } else if (key == "transversal_overflow") {
            reference.transversal_overflow = parse_pair(value, "transversal_overflow");
        } else if (key == "blind_spot") {
            if (!value.is_array()) {
                sink.error(kReferenceFile, 0, "blind_spot must be an array of indicator codes");
            } else {
                std::vector<std::string> codes;
                for (const auto& item : value) {
                    if (item.is_string()) codes.push_back(item.get<std::string>());
                }
                reference.blind_spot = std::move(codes);
            }
        } else if (key == "blind_spot_share") {
            if (!value.is_number()) {
                sink.error(kReferenceFile, 0, "blind_spot_share must be a number");
            } else {
                reference.blind_spot_share = value.get<double>();
            }
        } else {
            sink.warning(kReferenceFile, 0, "ignoring unknown key \"" + key + "\"");
        }
    }
}

std::vector<std::string> split_list(const std::string& raw, char delimiter) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(raw);
    while (std::getline(ss, item, delimiter)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

}  // namespace

std::string Diagnostic::to_string() const {
    std::string out = file;
    if (line > 0) {
        out += ":" + std::to_string(line);
    }
    out += severity == Severity::error ? ": error: " : ": warning: ";
    out += message;
    return out;
}

DatasetError::DatasetError(Kind kind, std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&diagnostics] {
          std::string out;
          for (const auto& d : diagnostics) {
              if (!out.empty()) out += '\n';
              out += d.to_string();
          }
          return out.empty() ? std::string("ingest failed") : out;
      }()),
      kind_(kind),
      diagnostics_(std::move(diagnostics)) {}

std::vector<Indicator> DatasetBundle::preliminary_indicators() const {
    std::vector<Indicator> out;
    for (const auto& ind : indicators) {
        if (ind.status == IndicatorStatus::preliminary) {
            out.push_back(ind);
        }
    }
    return out;
}

std::vector<Indicator> DatasetBundle::consolidated_rows() const {
    std::vector<Indicator> out;
    for (const auto& ind : indicators) {
        if (ind.status == IndicatorStatus::consolidated) {
            out.push_back(ind);
        }
    }
    return out;
}

const Indicator* DatasetBundle::find_indicator(const std::string& code) const {
    for (const auto& ind : indicators) {
        if (ind.code == code) return &ind;
    }
    return nullptr;
}

const CountryRecord* DatasetBundle::find_country(const std::string& id) const {
    for (const auto& c : countries) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

std::string_view to_string(StdMode mode) {
    return mode == StdMode::population ? "population" : "sample";
}

StdMode std_mode_from_string(std::string_view text) {
    if (text == "population") return StdMode::population;
    if (text == "sample") return StdMode::sample;
    throw std::invalid_argument("std_mode must be \"population\" or \"sample\"");
}

DatasetBundle load_bundle(const fs::path& data_dir) {
    {
        std::vector<Diagnostic> io;
        if (!fs::is_directory(data_dir)) {
            io.push_back({Diagnostic::Severity::error, data_dir.string(), 0,
                          "dataset directory does not exist"});
        } else {
            for (const char* file : kRequiredFiles) {
                if (!fs::is_regular_file(data_dir / file)) {
                    io.push_back({Diagnostic::Severity::error, file, 0, "required file missing"});
                }
            }
        }
        if (!io.empty()) {
            throw DatasetError(DatasetError::Kind::io, std::move(io));
        }
    }

    DiagnosticSink sink;
    DatasetBundle bundle;

    if (auto table = read_table(data_dir, kDimensionsFile, sink)) {
        ColumnMap columns(*table, kDimensionsFile, {"code", "name", "origin"}, sink);
        for_each_row(*table, columns, kDimensionsFile, sink, [&](const csv::Row& row) {
            Dimension d;
            d.code = trim(columns.get(row, "code"));
            std::transform(d.code.begin(), d.code.end(), d.code.begin(),
                           [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
            d.name = columns.get(row, "name");
            const std::string origin = to_lower(trim(columns.get(row, "origin")));
            if (origin == "preliminary") {
                d.origin = DimensionOrigin::preliminary;
            } else if (origin == "extension") {
                d.origin = DimensionOrigin::extension;
            } else {
                sink.error(kDimensionsFile, row.line,
                           "column \"origin\": expected preliminary|extension, got \"" + origin +
                               "\"");
                return;
            }
            bundle.dimensions.push_back(std::move(d));
        });
    }

    if (auto table = read_table(data_dir, kIndicatorsFile, sink)) {
        ColumnMap columns(*table, kIndicatorsFile,
                          {"code", "dimension", "area", "name", "status", "feasibility_notes"},
                          sink);
        for_each_row(*table, columns, kIndicatorsFile, sink, [&](const csv::Row& row) {
            Indicator ind;
            try {
                ind.code = normalize_code(trim(columns.get(row, "code")));
            } catch (const CodeFormatError& e) {
                sink.error(kIndicatorsFile, row.line, std::string("column \"code\": ") + e.what());
                return;
            }
            ind.dimension = trim(columns.get(row, "dimension"));
            std::transform(ind.dimension.begin(), ind.dimension.end(), ind.dimension.begin(),
                           [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
            ind.area = columns.get(row, "area");
            ind.name = columns.get(row, "name");
            const std::string status = to_lower(trim(columns.get(row, "status")));
            if (status == "preliminary") {
                ind.status = IndicatorStatus::preliminary;
            } else if (status == "proposed") {
                ind.status = IndicatorStatus::proposed;
            } else if (status == "consolidated") {
                ind.status = IndicatorStatus::consolidated;
            } else {
                sink.error(kIndicatorsFile, row.line,
                           "column \"status\": expected preliminary|proposed|consolidated, got \"" +
                               status + "\"");
                return;
            }
            ind.feasibility_notes = columns.get(row, "feasibility_notes");
            bundle.indicators.push_back(std::move(ind));
        });
    }

    if (auto table = read_table(data_dir, kCountriesFile, sink)) {
        ColumnMap columns(
            *table, kCountriesFile,
            {"id", "name", "has_document", "uses_indicators", "plans_indicators", "notes"}, sink);
        for_each_row(*table, columns, kCountriesFile, sink, [&](const csv::Row& row) {
            CountryRecord c;
            c.id = trim(columns.get(row, "id"));
            c.name = columns.get(row, "name");
            c.notes = columns.get(row, "notes");
            for (const auto& [field, target] :
                 std::initializer_list<std::pair<const char*, bool*>>{
                     {"has_document", &c.has_document},
                     {"uses_indicators", &c.uses_indicators},
                     {"plans_indicators", &c.plans_indicators}}) {
                auto value = parse_bool(columns.get(row, field));
                if (!value) {
                    sink.error(kCountriesFile, row.line,
                               std::string("column \"") + field + "\": expected true|false");
                    return;
                }
                *target = *value;
            }
            bundle.countries.push_back(std::move(c));
        });
    }

    if (auto table = read_table(data_dir, kMatchesFile, sink)) {
        ColumnMap columns(*table, kMatchesFile, {"indicator", "country", "quality"}, sink);
        for_each_row(*table, columns, kMatchesFile, sink, [&](const csv::Row& row) {
            MatchRecord m;
            try {
                m.indicator = normalize_code(trim(columns.get(row, "indicator")));
            } catch (const CodeFormatError& e) {
                sink.error(kMatchesFile, row.line, std::string("column \"indicator\": ") + e.what());
                return;
            }
            m.country = trim(columns.get(row, "country"));
            const std::string quality = to_lower(trim(columns.get(row, "quality")));
            if (quality == "full") {
                m.quality = MatchQuality::full;
            } else if (quality == "partial") {
                m.quality = MatchQuality::partial;
            } else {
                sink.error(kMatchesFile, row.line,
                           "column \"quality\": expected full|partial, got \"" + quality + "\"");
                return;
            }
            bundle.matches.push_back(std::move(m));
        });
    }

    if (auto table = read_table(data_dir, kAxesFile, sink)) {
        ColumnMap columns(*table, kAxesFile, {"id", "kind", "name", "abbrev"}, sink);
        for_each_row(*table, columns, kAxesFile, sink, [&](const csv::Row& row) {
            Axis axis;
            axis.id = trim(columns.get(row, "id"));
            axis.name = columns.get(row, "name");
            axis.abbrev = trim(columns.get(row, "abbrev"));
            const std::string kind = to_lower(trim(columns.get(row, "kind")));
            if (kind == "vertical") {
                bundle.axis_scheme.vertical.push_back(std::move(axis));
            } else if (kind == "transversal") {
                bundle.axis_scheme.transversal.push_back(std::move(axis));
            } else {
                sink.error(kAxesFile, row.line,
                           "column \"kind\": expected vertical|transversal, got \"" + kind + "\"");
            }
        });
    }

    if (auto table = read_table(data_dir, kCorrespondencesFile, sink)) {
        ColumnMap columns(*table, kCorrespondencesFile, {"indicator", "vertical", "transversal"},
                          sink);
        std::set<std::tuple<std::string, std::string, std::string>> seen;
        for_each_row(*table, columns, kCorrespondencesFile, sink, [&](const csv::Row& row) {
            CorrespondenceEntry e;
            try {
                e.indicator = normalize_code(trim(columns.get(row, "indicator")));
            } catch (const CodeFormatError& err) {
                sink.error(kCorrespondencesFile, row.line,
                           std::string("column \"indicator\": ") + err.what());
                return;
            }
            e.vertical = trim(columns.get(row, "vertical"));
            e.transversal = trim(columns.get(row, "transversal"));
            if (!seen.insert({e.indicator, e.vertical, e.transversal}).second) {
                sink.warning(kCorrespondencesFile, row.line,
                             "duplicate placement of " + e.indicator + " collapsed");
                return;
            }
            bundle.correspondences.push_back(std::move(e));
        });
    }

    if (fs::is_regular_file(data_dir / kProposalsFile)) {
        bundle.has_proposals = true;
        if (auto table = read_table(data_dir, kProposalsFile, sink)) {
            ColumnMap columns(
                *table, kProposalsFile,
                {"name", "target_dimension", "source_countries", "alias_group", "accepted"}, sink);
            for_each_row(*table, columns, kProposalsFile, sink, [&](const csv::Row& row) {
                ProposedIndicator p;
                p.name = columns.get(row, "name");
                p.target_dimension = trim(columns.get(row, "target_dimension"));
                p.source_countries = split_list(columns.get(row, "source_countries"), ';');
                p.alias_group = trim(columns.get(row, "alias_group"));
                auto accepted = parse_bool(columns.get(row, "accepted"));
                if (!accepted) {
                    sink.error(kProposalsFile, row.line, "column \"accepted\": expected true|false");
                    return;
                }
                p.accepted = *accepted;
                if (p.source_countries.empty()) {
                    sink.error(kProposalsFile, row.line,
                               "column \"source_countries\": at least one country id required");
                    return;
                }
                bundle.proposals.push_back(std::move(p));
            });
        }
    }

    if (fs::is_regular_file(data_dir / kConfigFile)) {
        parse_config(data_dir / kConfigFile, bundle.config, sink);
    }
    if (fs::is_regular_file(data_dir / kReferenceFile)) {
        parse_reference(data_dir / kReferenceFile, bundle.reference, sink);
    }

    // Cross-file checks for proposals (they are outside validate_dataset's
    // signature but must hold before analysis).
    {
        std::set<std::string> ids;
        for (const auto& c : bundle.countries) ids.insert(c.id);
        std::map<std::string, std::string> group_dimension;
        for (const auto& p : bundle.proposals) {
            for (const auto& src : p.source_countries) {
                if (ids.count(src) == 0) {
                    sink.error(kProposalsFile, 0,
                               "proposal \"" + p.name + "\" references unknown country \"" + src +
                                   "\"");
                }
            }
            if (!p.alias_group.empty()) {
                auto [it, inserted] = group_dimension.try_emplace(p.alias_group, p.target_dimension);
                if (!inserted && it->second != p.target_dimension) {
                    sink.error(kProposalsFile, 0,
                               "alias group \"" + p.alias_group +
                                   "\" spans two target dimensions (\"" + it->second + "\" vs \"" +
                                   p.target_dimension + "\")");
                }
            }
        }
    }

    for (const auto& violation : validate_dataset(bundle.indicators, bundle.dimensions,
                                                  bundle.countries, bundle.matches,
                                                  bundle.axis_scheme, bundle.correspondences)) {
        sink.error("dataset", 0,
                   std::string(to_string(violation.kind)) + " [" + violation.subject + "]: " +
                       violation.message);
    }

    if (sink.has_errors()) {
        throw DatasetError(DatasetError::Kind::data, sink.take());
    }
    bundle.warnings = sink.warnings_only();
    return bundle;
}

void export_bundle(const DatasetBundle& bundle, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir)) {
        throw DatasetError(DatasetError::Kind::io,
                          {{Diagnostic::Severity::error, out_dir.string(), 0,
                            "output directory cannot be created"}});
    }

    auto write_file = [&](const char* name, const std::string& contents) {
        std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
        out << contents;
        if (!out.good()) {
            throw DatasetError(DatasetError::Kind::io, {{Diagnostic::Severity::error, name, 0,
                                                       "unable to write file"}});
        }
    };

    {
        auto sorted = bundle.dimensions;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Dimension& a, const Dimension& b) { return a.code < b.code; });
        std::string out = "code,name,origin\n";
        for (const auto& d : sorted) {
            out += csv::format_row({d.code, d.name,
                                    d.origin == DimensionOrigin::preliminary ? "preliminary"
                                                                             : "extension"});
        }
        write_file(kDimensionsFile, out);
    }
    {
        auto sorted = bundle.indicators;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Indicator& a, const Indicator& b) { return a.code < b.code; });
        std::string out = "code,dimension,area,name,status,feasibility_notes\n";
        for (const auto& ind : sorted) {
            const char* status = ind.status == IndicatorStatus::preliminary ? "preliminary"
                                 : ind.status == IndicatorStatus::proposed  ? "proposed"
                                                                            : "consolidated";
            out += csv::format_row(
                {ind.code, ind.dimension, ind.area, ind.name, status, ind.feasibility_notes});
        }
        write_file(kIndicatorsFile, out);
    }
    {
        auto sorted = bundle.countries;
        std::sort(sorted.begin(), sorted.end(),
                  [](const CountryRecord& a, const CountryRecord& b) { return a.id < b.id; });
        std::string out = "id,name,has_document,uses_indicators,plans_indicators,notes\n";
        for (const auto& c : sorted) {
            out += csv::format_row({c.id, c.name, c.has_document ? "true" : "false",
                                    c.uses_indicators ? "true" : "false",
                                    c.plans_indicators ? "true" : "false", c.notes});
        }
        write_file(kCountriesFile, out);
    }
    {
        auto sorted = bundle.matches;
        std::sort(sorted.begin(), sorted.end(), [](const MatchRecord& a, const MatchRecord& b) {
            return std::tie(a.indicator, a.country) < std::tie(b.indicator, b.country);
        });
        std::string out = "indicator,country,quality\n";
        for (const auto& m : sorted) {
            out += csv::format_row(
                {m.indicator, m.country, m.quality == MatchQuality::full ? "full" : "partial"});
        }
        write_file(kMatchesFile, out);
    }
    {
        std::string out = "id,kind,name,abbrev\n";
        for (const auto& a : bundle.axis_scheme.vertical) {
            out += csv::format_row({a.id, "vertical", a.name, a.abbrev});
        }
        for (const auto& a : bundle.axis_scheme.transversal) {
            out += csv::format_row({a.id, "transversal", a.name, a.abbrev});
        }
        write_file(kAxesFile, out);
    }
    {
        auto sorted = bundle.correspondences;
        std::sort(sorted.begin(), sorted.end(),
                  [](const CorrespondenceEntry& a, const CorrespondenceEntry& b) {
                      return std::tie(a.indicator, a.vertical, a.transversal) <
                             std::tie(b.indicator, b.vertical, b.transversal);
                  });
        std::string out = "indicator,vertical,transversal\n";
        for (const auto& e : sorted) {
            out += csv::format_row({e.indicator, e.vertical, e.transversal});
        }
        write_file(kCorrespondencesFile, out);
    }
    if (bundle.has_proposals) {
        // Proposal order is semantic (it pins code assignment), so it is
        // preserved verbatim.
        std::string out = "name,target_dimension,source_countries,alias_group,accepted\n";
        for (const auto& p : bundle.proposals) {
            std::string sources;
            for (std::size_t i = 0; i < p.source_countries.size(); ++i) {
                if (i > 0) sources += ';';
                sources += p.source_countries[i];
            }
            out += csv::format_row({p.name, p.target_dimension, sources, p.alias_group,
                                    p.accepted ? "true" : "false"});
        }
        write_file(kProposalsFile, out);
    }
    {
        json config;
        config["partial_weight"] = bundle.config.partial_weight;
        config["std_mode"] = std::string(to_string(bundle.config.std_mode));
        if (bundle.config.standout_threshold) {
            config["standout_threshold"] = *bundle.config.standout_threshold;
        } else {
            config["standout_threshold"] = "auto";
        }
        config["min_axis_coverage"] = bundle.config.min_axis_coverage;
        write_file(kConfigFile, config.dump(2) + "\n");
    }
    if (!bundle.reference.empty()) {
        json ref;
        if (!bundle.reference.column_totals.empty()) {
            ref["column_totals"] = bundle.reference.column_totals;
        }
        if (!bundle.reference.row_distinct_totals.empty()) {
            ref["row_distinct_totals"] = bundle.reference.row_distinct_totals;
        }
        if (bundle.reference.vertical_overflow) {
            ref["vertical_overflow"] = {bundle.reference.vertical_overflow->first,
                                        bundle.reference.vertical_overflow->second};
        }
        if (bundle.reference.transversal_overflow) {
            ref["transversal_overflow"] = {bundle.reference.transversal_overflow->first,
                                           bundle.reference.transversal_overflow->second};
        }
        if (bundle.reference.blind_spot) {
            ref["blind_spot"] = *bundle.reference.blind_spot;
        }
        if (bundle.reference.blind_spot_share) {
            ref["blind_spot_share"] = *bundle.reference.blind_spot_share;
        }
        write_file(kReferenceFile, ref.dump(2) + "\n");
    }
}

}  // namespace stratscope
