#include "stratscope/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace stratscope {

namespace {

bool is_upper_letter(char c) { return c >= 'A' && c <= 'Z'; }

bool operator_less(const Violation& a, const Violation& b) {
    return std::tie(a.kind, a.subject, a.message) < std::tie(b.kind, b.subject, b.message);
}

bool is_sentinel(const std::string& id) {
    return id == kOutsideVerticalAxes || id == kOutsideTransversalAxes;
}

class ViolationCollector {
  public:
    void add(ViolationKind kind, std::string subject, std::string message) {
        report_.push_back({kind, std::move(subject), std::move(message)});
    }

    ValidationReport finish() {
        std::sort(report_.begin(), report_.end(), operator_less);
        report_.erase(std::unique(report_.begin(), report_.end(),
                                  [](const Violation& a, const Violation& b) {
                                      return a.kind == b.kind && a.subject == b.subject &&
                                             a.message == b.message;
                                  }),
                      report_.end());
        return std::move(report_);
    }

  private:
    ValidationReport report_;
};

}  // namespace

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::duplicate_code: return "duplicate_code";
        case ViolationKind::dangling_reference: return "dangling_reference";
        case ViolationKind::pattern_failure: return "pattern_failure";
        case ViolationKind::sentinel_misuse: return "sentinel_misuse";
        case ViolationKind::field_constraint: return "field_constraint";
    }
    return "unknown";
}

CodeFormatError::CodeFormatError(std::string_view raw, std::size_t position,
                                 const std::string& what)
    : std::runtime_error("malformed indicator code \"" + std::string(raw) + "\" at position " +
                         std::to_string(position) + ": " + what),
      position_(position) {}

std::string normalize_code(std::string_view raw) {
    if (raw.empty()) {
        throw CodeFormatError(raw, 0, "empty code");
    }
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(raw[0])));
    if (letter < 'A' || letter > 'Z') {
        throw CodeFormatError(raw, 0, "expected a letter");
    }
    if (raw.size() < 2) {
        throw CodeFormatError(raw, 1, "expected one or two digits after the letter");
    }
    if (raw.size() > 3) {
        throw CodeFormatError(raw, 3, "number part exceeds two digits");
    }
    int number = 0;
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(raw[i]))) {
            throw CodeFormatError(raw, i, "expected a digit");
        }
        number = number * 10 + (raw[i] - '0');
    }
    if (number < 1) {
        throw CodeFormatError(raw, 1, "indicator number must be >= 1");
    }
    std::string out(3, '0');
    out[0] = letter;
    out[1] = static_cast<char>('0' + number / 10);
    out[2] = static_cast<char>('0' + number % 10);
    return out;
}

const std::vector<std::string>& ExtendedMatrix::cell(const std::string& row,
                                                     const std::string& column) const {
    static const std::vector<std::string> empty;
    auto it = cells.find({row, column});
    return it == cells.end() ? empty : it->second;
}

int ExtendedMatrix::entry_count() const {
    int total = 0;
    for (const auto& [key, codes] : cells) {
        total += static_cast<int>(codes.size());
    }
    return total;
}

ValidationReport validate_dataset(const std::vector<Indicator>& indicators,
                                  const std::vector<Dimension>& dimensions,
                                  const std::vector<CountryRecord>& countries,
                                  const std::vector<MatchRecord>& matches,
                                  const AxisScheme& axis_scheme,
                                  const std::vector<CorrespondenceEntry>& correspondences) {
    ViolationCollector out;

    std::set<std::string> dimension_codes;
    for (const auto& d : dimensions) {
        if (d.code.size() != 1 || !is_upper_letter(d.code[0])) {
            out.add(ViolationKind::pattern_failure, d.code,
                    "dimension code must be a single uppercase letter");
            continue;
        }
        if (!dimension_codes.insert(d.code).second) {
            out.add(ViolationKind::duplicate_code, d.code, "duplicate dimension code");
        }
    }

    std::set<std::string> indicator_codes;
    for (const auto& ind : indicators) {
        bool canonical = false;
        try {
            canonical = normalize_code(ind.code) == ind.code;
        } catch (const CodeFormatError&) {
            canonical = false;
        }
        if (!canonical) {
            out.add(ViolationKind::pattern_failure, ind.code,
                    "indicator code is not in canonical letter+two-digit form");
            continue;
        }
        if (!indicator_codes.insert(ind.code).second) {
            out.add(ViolationKind::duplicate_code, ind.code, "duplicate indicator code");
        }
        if (!ind.dimension.empty() && ind.dimension[0] != ind.code[0]) {
            out.add(ViolationKind::field_constraint, ind.code,
                    "dimension \"" + ind.dimension + "\" does not match the code's leading letter");
        }
        if (!dimension_codes.empty() && dimension_codes.count(ind.code.substr(0, 1)) == 0) {
            out.add(ViolationKind::dangling_reference, ind.code,
                    "indicator references undeclared dimension \"" + ind.code.substr(0, 1) + "\"");
        }
    }

    std::set<std::string> country_ids;
    for (const auto& c : countries) {
        if (c.id.empty()) {
            out.add(ViolationKind::field_constraint, c.name, "country id must be non-empty");
            continue;
        }
        if (!country_ids.insert(c.id).second) {
            out.add(ViolationKind::duplicate_code, c.id, "duplicate country id");
        }
        if (!c.has_document && (c.uses_indicators || c.plans_indicators)) {
            out.add(ViolationKind::field_constraint, c.id,
                    "country without a strategy document cannot use or plan indicators");
        }
    }

    std::set<std::pair<std::string, std::string>> match_pairs;
    for (const auto& m : matches) {
        if (!match_pairs.insert({m.indicator, m.country}).second) {
            out.add(ViolationKind::duplicate_code, m.indicator + "/" + m.country,
                    "duplicate (indicator, country) match");
        }
        if (indicator_codes.count(m.indicator) == 0) {
            out.add(ViolationKind::dangling_reference, m.indicator + "/" + m.country,
                    "match references unknown indicator \"" + m.indicator + "\"");
        }
        if (country_ids.count(m.country) == 0) {
            out.add(ViolationKind::dangling_reference, m.indicator + "/" + m.country,
                    "match references unknown country \"" + m.country + "\"");
        }
    }

    std::set<std::string> vertical_ids;
    std::set<std::string> transversal_ids;
    std::set<std::string> all_axis_ids;
    auto check_axis = [&](const Axis& axis, std::set<std::string>& kind_set) {
        if (is_sentinel(axis.id)) {
            out.add(ViolationKind::sentinel_misuse, axis.id,
                    "sentinel id is reserved and may not be declared as an axis");
            return;
        }
        kind_set.insert(axis.id);
        if (!all_axis_ids.insert(axis.id).second) {
            out.add(ViolationKind::duplicate_code, axis.id, "duplicate axis id");
        }
    };
    for (const auto& a : axis_scheme.vertical) check_axis(a, vertical_ids);
    for (const auto& a : axis_scheme.transversal) check_axis(a, transversal_ids);
    if (!axis_scheme.empty() && (axis_scheme.vertical.empty() || axis_scheme.transversal.empty())) {
        out.add(ViolationKind::field_constraint, "axis_scheme",
                "scheme must declare at least one vertical and one transversal axis");
    }
    for (const auto& action : axis_scheme.actions) {
        if (all_axis_ids.count(action.axis_id) == 0) {
            out.add(ViolationKind::dangling_reference, action.action_id,
                    "action references unknown axis \"" + action.axis_id + "\"");
        }
    }

    std::set<std::tuple<std::string, std::string, std::string>> triples;
    for (const auto& e : correspondences) {
        const std::string subject = e.indicator + "/" + e.vertical + "/" + e.transversal;
        if (!triples.insert({e.indicator, e.vertical, e.transversal}).second) {
            out.add(ViolationKind::duplicate_code, subject,
                    "duplicate (indicator, vertical, transversal) correspondence");
        }
        if (indicator_codes.count(e.indicator) == 0) {
            out.add(ViolationKind::dangling_reference, subject,
                    "correspondence references unknown indicator \"" + e.indicator + "\"");
        }
        if (e.vertical == kOutsideTransversalAxes) {
            out.add(ViolationKind::sentinel_misuse, subject,
                    "OTA is the transversal sentinel and cannot appear in the vertical slot");
        } else if (e.vertical != kOutsideVerticalAxes && vertical_ids.count(e.vertical) == 0) {
            out.add(ViolationKind::dangling_reference, subject,
                    "correspondence references unknown vertical axis \"" + e.vertical + "\"");
        }
        if (e.transversal == kOutsideVerticalAxes) {
            out.add(ViolationKind::sentinel_misuse, subject,
                    "OVA is the vertical sentinel and cannot appear in the transversal slot");
        } else if (e.transversal != kOutsideTransversalAxes &&
                   transversal_ids.count(e.transversal) == 0) {
            out.add(ViolationKind::dangling_reference, subject,
                    "correspondence references unknown transversal axis \"" + e.transversal + "\"");
        }
    }

    return out.finish();
}

}  // namespace stratscope
