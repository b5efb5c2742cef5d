#include "stratscope/consolidate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace stratscope {

namespace {

bool is_dimension_code(const std::string& target) {
    return target.size() == 1 && target[0] >= 'A' && target[0] <= 'Z';
}

std::string fold_case(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string make_code(char letter, int number) {
    std::string code(3, '0');
    code[0] = letter;
    code[1] = static_cast<char>('0' + number / 10);
    code[2] = static_cast<char>('0' + number % 10);
    return code;
}

}  // namespace

Taxonomy Taxonomy::preliminary_view(const DatasetBundle& bundle) {
    Taxonomy t;
    for (const auto& d : bundle.dimensions) {
        if (d.origin == DimensionOrigin::preliminary) {
            t.dimensions.push_back(d);
        }
    }
    for (const auto& ind : bundle.indicators) {
        if (ind.status == IndicatorStatus::preliminary) {
            t.indicator_codes.push_back(ind.code);
        }
    }
    return t;
}

std::vector<ProposedIndicator> merge_aliases(const std::vector<ProposedIndicator>& proposed) {
    std::vector<ProposedIndicator> out;
    std::map<std::string, std::size_t> group_index;
    for (const auto& p : proposed) {
        if (p.alias_group.empty()) {
            out.push_back(p);
            continue;
        }
        auto it = group_index.find(p.alias_group);
        if (it == group_index.end()) {
            group_index[p.alias_group] = out.size();
            out.push_back(p);
            continue;
        }
        ProposedIndicator& target = out[it->second];
        if (target.target_dimension != p.target_dimension) {
            throw std::invalid_argument("alias group \"" + p.alias_group +
                                        "\" spans two target dimensions (\"" +
                                        target.target_dimension + "\" vs \"" + p.target_dimension +
                                        "\")");
        }
        for (const auto& src : p.source_countries) {
            if (std::find(target.source_countries.begin(), target.source_countries.end(), src) ==
                target.source_countries.end()) {
                target.source_countries.push_back(src);
            }
        }
        target.accepted = target.accepted || p.accepted;
    }
    for (auto& p : out) {
        std::sort(p.source_countries.begin(), p.source_countries.end());
    }
    return out;
}

CodeAssignment assign_codes(const std::vector<ProposedIndicator>& merged_accepted,
                            const Taxonomy& taxonomy) {
    CodeAssignment result;

    char max_letter = 0;
    std::map<std::string, char> name_to_letter;  // folded dimension name -> code
    for (const auto& d : taxonomy.dimensions) {
        if (!d.code.empty()) {
            max_letter = std::max(max_letter, d.code[0]);
            name_to_letter[fold_case(d.name)] = d.code[0];
        }
    }
    std::map<char, int> max_number;
    for (const auto& code : taxonomy.indicator_codes) {
        if (code.size() == 3) {
            const int number = (code[1] - '0') * 10 + (code[2] - '0');
            auto [it, inserted] = max_number.try_emplace(code[0], number);
            if (!inserted) {
                it->second = std::max(it->second, number);
            }
        }
    }

    char next_letter = max_letter == 0 ? 'A' : static_cast<char>(max_letter + 1);
    std::map<std::string, char> new_dimension_letters;  // folded new name -> letter

    for (const auto& p : merged_accepted) {
        char letter;
        if (is_dimension_code(p.target_dimension)) {
            letter = p.target_dimension[0];
        } else if (auto it = name_to_letter.find(fold_case(p.target_dimension));
                   it != name_to_letter.end()) {
            letter = it->second;
        } else {
            auto [it2, inserted] =
                new_dimension_letters.try_emplace(fold_case(p.target_dimension), next_letter);
            if (inserted) {
                if (next_letter > 'Z') {
                    throw std::invalid_argument("dimension letters exhausted (past Z)");
                }
                result.new_dimensions.push_back(
                    {std::string(1, next_letter), p.target_dimension, DimensionOrigin::extension});
                ++next_letter;
            }
            letter = it2->second;
        }
        const int number = max_number[letter] + 1;
        if (number > 99) {
            throw std::invalid_argument(std::string("indicator numbers exhausted in dimension ") +
                                        letter);
        }
        max_number[letter] = number;

        Indicator ind;
        ind.code = make_code(letter, number);
        ind.dimension = std::string(1, letter);
        ind.name = p.name;
        ind.status = IndicatorStatus::proposed;
        result.indicators.push_back(std::move(ind));
    }
    return result;
}

std::vector<Indicator> consolidate_set(const std::vector<Indicator>& preliminary,
                                       const std::vector<LabeledIndicator>& labels,
                                       const std::vector<Indicator>& accepted_assigned) {
    std::set<std::string> hp;
    for (const auto& l : labels) {
        if (l.label == PrevalenceLabel::highly_prevalent) {
            hp.insert(l.indicator);
        }
    }
    std::vector<Indicator> out;
    std::set<std::string> seen;
    for (const auto& ind : preliminary) {
        if (hp.count(ind.code) > 0) {
            Indicator copy = ind;
            copy.status = IndicatorStatus::consolidated;
            seen.insert(copy.code);
            out.push_back(std::move(copy));
        }
    }
    for (const auto& ind : accepted_assigned) {
        if (!seen.insert(ind.code).second) {
            throw std::invalid_argument("consolidated code collision: " + ind.code);
        }
        Indicator copy = ind;
        copy.status = IndicatorStatus::consolidated;
        out.push_back(std::move(copy));
    }
    std::sort(out.begin(), out.end(),
              [](const Indicator& a, const Indicator& b) { return a.code < b.code; });
    return out;
}

ConsolidationResult consolidate_bundle(const DatasetBundle& bundle,
                                       const std::vector<LabeledIndicator>& labels) {
    ConsolidationResult result;
    for (const auto& l : labels) {
        if (l.label == PrevalenceLabel::highly_prevalent) {
            result.hp_codes.push_back(l.indicator);
        }
    }
    std::sort(result.hp_codes.begin(), result.hp_codes.end());

    const auto preliminary = bundle.preliminary_indicators();
    const auto pre_assigned = bundle.consolidated_rows();

    if (bundle.has_proposals) {
        std::vector<ProposedIndicator> accepted;
        for (const auto& p : merge_aliases(bundle.proposals)) {
            if (p.accepted) {
                accepted.push_back(p);
            }
        }
        result.assignment = assign_codes(accepted, Taxonomy::preliminary_view(bundle));
        result.consolidated = consolidate_set(preliminary, labels, result.assignment.indicators);

        // When the dataset already carries consolidated rows, the derivation
        // must reproduce them; analyst-curated rows win on name and metadata.
        if (!pre_assigned.empty()) {
            result.crosschecked = true;
            std::set<std::string> derived;
            for (const auto& ind : result.consolidated) {
                derived.insert(ind.code);
            }
            std::set<std::string> existing;
            for (const auto& ind : pre_assigned) {
                existing.insert(ind.code);
            }
            for (const auto& hp : result.hp_codes) {
                existing.insert(hp);
            }
            for (const auto& code : existing) {
                if (derived.count(code) == 0) {
                    result.missing.push_back(code);
                }
            }
            for (const auto& code : derived) {
                if (existing.count(code) == 0) {
                    result.unexpected.push_back(code);
                }
            }
            for (auto& ind : result.consolidated) {
                if (const Indicator* curated = bundle.find_indicator(ind.code);
                    curated && curated->status == IndicatorStatus::consolidated) {
                    const auto status = ind.status;
                    ind = *curated;
                    ind.status = status;
                }
            }
        }
    } else {
        result.consolidated = consolidate_set(preliminary, labels, pre_assigned);
    }
    return result;
}

}  // namespace stratscope
