#include "stratscope/prevalence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace stratscope {

std::string_view to_string(PrevalenceLabel label) {
    switch (label) {
        case PrevalenceLabel::highly_prevalent: return "HighlyPrevalent";
        case PrevalenceLabel::prevalent: return "Prevalent";
        case PrevalenceLabel::irrelevant: return "Irrelevant";
    }
    return "unknown";
}

std::string_view to_string(Stratum stratum) {
    switch (stratum) {
        case Stratum::no_nais: return "NoNais";
        case Stratum::systematic: return "Systematic";
        case Stratum::planned: return "Planned";
        case Stratum::neither: return "Neither";
    }
    return "unknown";
}

std::vector<FrequencyRecord> compute_frequencies(const std::vector<Indicator>& universe,
                                                 const std::vector<MatchRecord>& matches,
                                                 const std::vector<CountryRecord>& countries,
                                                 double partial_weight) {
    if (partial_weight < 0.0 || partial_weight > 1.0) {
        throw std::invalid_argument("partial_weight must be in [0, 1]");
    }
    std::set<std::string> counted_countries;
    for (const auto& c : countries) {
        if (c.has_document) {
            counted_countries.insert(c.id);
        }
    }
    std::map<std::string, double> freq;
    for (const auto& ind : universe) {
        freq[ind.code] = 0.0;
    }
    for (const auto& m : matches) {
        auto it = freq.find(m.indicator);
        if (it == freq.end() || counted_countries.count(m.country) == 0) {
            continue;  // outside the universe or excluded country
        }
        it->second += m.quality == MatchQuality::full ? 1.0 : partial_weight;
    }
    std::vector<FrequencyRecord> out;
    out.reserve(freq.size());
    for (const auto& [code, f] : freq) {
        out.push_back({code, f});
    }
    return out;
}

PrevalenceStats compute_stats(const std::vector<FrequencyRecord>& frequencies, StdMode mode) {
    if (frequencies.empty()) {
        throw std::invalid_argument("frequency series is empty");
    }
    const std::size_t n = frequencies.size();
    if (mode == StdMode::sample && n < 2) {
        throw std::invalid_argument("sample standard deviation requires at least two values");
    }

    PrevalenceStats stats;
    const bool all_equal = std::all_of(frequencies.begin(), frequencies.end(),
                                       [&](const FrequencyRecord& r) {
                                           return r.frequency == frequencies.front().frequency;
                                       });
    if (all_equal) {
        // Exact degenerate case: keeps f == mean ties exact so the boundary
        // precedence applies deterministically.
        stats.mean = frequencies.front().frequency;
        stats.std_dev = 0.0;
    } else {
        double sum = 0.0;
        for (const auto& r : frequencies) {
            sum += r.frequency;
        }
        stats.mean = sum / static_cast<double>(n);
        double squares = 0.0;
        for (const auto& r : frequencies) {
            const double d = r.frequency - stats.mean;
            squares += d * d;
        }
        const double denom =
            mode == StdMode::population ? static_cast<double>(n) : static_cast<double>(n - 1);
        stats.std_dev = std::sqrt(squares / denom);
    }
    stats.hp_threshold = stats.mean + stats.std_dev;
    stats.irrelevant_threshold = std::max(stats.mean - stats.std_dev, 0.0);
    return stats;
}

std::vector<LabeledIndicator> classify(const std::vector<FrequencyRecord>& frequencies,
                                       const PrevalenceStats& stats) {
    std::vector<LabeledIndicator> out;
    out.reserve(frequencies.size());
    for (const auto& r : frequencies) {
        PrevalenceLabel label;
        if (r.frequency >= stats.hp_threshold) {
            label = PrevalenceLabel::highly_prevalent;
        } else if (r.frequency <= stats.irrelevant_threshold) {
            label = PrevalenceLabel::irrelevant;
        } else {
            label = PrevalenceLabel::prevalent;
        }
        out.push_back({r.indicator, r.frequency, label});
    }
    return out;
}

StandoutResult detect_standouts(const std::vector<MatchRecord>& matches,
                                const std::vector<CountryRecord>& countries,
                                std::optional<int> threshold) {
    StandoutResult result;
    for (const auto& c : countries) {
        if (c.has_document) {
            result.counts[c.id] = 0;
        }
    }
    for (const auto& m : matches) {
        auto it = result.counts.find(m.country);
        if (it != result.counts.end()) {
            ++it->second;
        }
    }
    if (threshold) {
        result.threshold = static_cast<double>(*threshold);
        result.auto_threshold = false;
    } else {
        if (result.counts.empty()) {
            throw std::invalid_argument(
                "auto standout threshold needs at least one country with a strategy document");
        }
        double sum = 0.0;
        for (const auto& [id, count] : result.counts) {
            sum += static_cast<double>(count);
        }
        result.threshold = sum / static_cast<double>(result.counts.size());
        result.auto_threshold = true;
    }
    for (const auto& [id, count] : result.counts) {
        if (static_cast<double>(count) > result.threshold) {
            result.standouts.push_back(id);
        }
    }
    return result;
}

std::map<std::string, Stratum> stratify_countries(const std::vector<CountryRecord>& countries,
                                                  const std::vector<std::string>& standouts) {
    const std::set<std::string> standout_set(standouts.begin(), standouts.end());
    std::map<std::string, Stratum> out;
    for (const auto& c : countries) {
        Stratum stratum;
        if (!c.has_document) {
            stratum = Stratum::no_nais;
        } else if (c.uses_indicators || standout_set.count(c.id) > 0) {
            stratum = Stratum::systematic;
        } else if (c.plans_indicators) {
            stratum = Stratum::planned;
        } else {
            stratum = Stratum::neither;
        }
        out[c.id] = stratum;
    }
    return out;
}

}  // namespace stratscope
