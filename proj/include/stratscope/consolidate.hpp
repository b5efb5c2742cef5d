#pragma once

#include <string>
#include <vector>

#include "stratscope/ingest.hpp"
#include "stratscope/model.hpp"
#include "stratscope/prevalence.hpp"

// Builds the consolidated feasible-indicator set: highly prevalent preliminary
// indicators plus accepted proposals, with automatic code assignment and
// taxonomy extension.

namespace stratscope {

// The existing taxonomy code assignment works against: dimensions and
// indicator codes of the preliminary list. Pre-assigned extension content is
// deliberately not part of it, so a re-run reproduces the same assignments.
struct Taxonomy {
    std::vector<Dimension> dimensions;
    std::vector<std::string> indicator_codes;

    static Taxonomy preliminary_view(const DatasetBundle& bundle);
};

struct CodeAssignment {
    std::vector<Indicator> indicators;     // status=proposed, codes assigned
    std::vector<Dimension> new_dimensions;  // origin=extension
};

// Collapses entries sharing an alias_group into one (union of source
// countries, first member's name and position; a group is accepted when any
// member is). Entries without a group pass through. Throws
// std::invalid_argument when a group spans two target dimensions.
std::vector<ProposedIndicator> merge_aliases(const std::vector<ProposedIndicator>& proposed);

// Assigns codes in stable input order: existing-dimension entries get the
// next unused number in that dimension; new-dimension names get the next
// unused uppercase letter after the current maximum, numbering from 01.
// Throws std::invalid_argument when letters or two-digit numbers run out.
CodeAssignment assign_codes(const std::vector<ProposedIndicator>& merged_accepted,
                            const Taxonomy& taxonomy);

// Union of highly prevalent preliminary indicators and accepted proposals,
// all with status=consolidated, sorted by code. Throws std::invalid_argument
// on a code collision.
std::vector<Indicator> consolidate_set(const std::vector<Indicator>& preliminary,
                                       const std::vector<LabeledIndicator>& labels,
                                       const std::vector<Indicator>& accepted_assigned);

// Full consolidation over a bundle, including the cross-check of derived
// codes against any consolidated rows the dataset already carries.
struct ConsolidationResult {
    std::vector<std::string> hp_codes;
    CodeAssignment assignment;
    std::vector<Indicator> consolidated;
    bool crosschecked = false;  // dataset carried pre-assigned rows to compare
    std::vector<std::string> missing;     // pre-assigned but not derived
    std::vector<std::string> unexpected;  // derived but not pre-assigned
};

ConsolidationResult consolidate_bundle(const DatasetBundle& bundle,
                                       const std::vector<LabeledIndicator>& labels);

}  // namespace stratscope
