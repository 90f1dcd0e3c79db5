#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toptree/bottom_up.hpp"
#include "toptree/path_bridge.hpp"
#include "toptree/top_down.hpp"

namespace toptree {

/// Ordered key/value report. `plain()` renders "key  value" lines for
/// people, `structured()` renders "key: value" lines for scripts.
class Report {
public:
    Report& add(std::string key, std::string value);
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
    std::string plain() const;
    std::string structured() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

Report recognizability_report(const RecognizabilityVerdict& v, const RankedAlphabet& alphabet);
Report bool_combination_report(const BoolCombinationResult& r, std::size_t k, const RankedAlphabet& alphabet);
Report equivalence_report(const TreeEquivalence& e, const RankedAlphabet& alphabet);
Report emptiness_report(const Emptiness& e, const RankedAlphabet& alphabet);
Report refutation_report(const CombRefutation& r, CombTarget target, const DtdaSet& a);

std::string format_state_set(const StateSet& s, const TopDownCore& core);

}  // namespace toptree
