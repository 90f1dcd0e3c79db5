#include "toptree/report.hpp"

#include <algorithm>

namespace toptree {

Report& Report::add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::string Report::plain() const {
    std::size_t width = 0;
    for (const auto& [k, v] : entries_)
        width = std::max(width, k.size());
    std::string out;
    for (const auto& [k, v] : entries_)
        out += k + std::string(width - k.size() + 2, ' ') + v + '\n';
    return out;
}

std::string Report::structured() const {
    std::string out;
    for (const auto& [k, v] : entries_)
        out += k + ": " + v + '\n';
    return out;
}

namespace {

std::string yes_no(bool b) { return b ? "YES" : "NO"; }

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? " " : "") + items[i];
    return out.empty() ? "-" : out;
}

}  // namespace

std::string format_state_set(const StateSet& s, const TopDownCore& core) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? " " : "") + core.state_name(s[i]);
    return out + "}";
}

Report recognizability_report(const RecognizabilityVerdict& v, const RankedAlphabet& alphabet) {
    Report r;
    r.add("verdict", yes_no(v.recognizable));
    r.add("path-states", std::to_string(v.path_language.nfa().num_states()));
    r.add("candidate-states", std::to_string(v.candidate.core().num_states()));
    if (v.counterexample)
        r.add("counterexample", print_tree(*v.counterexample, alphabet));
    return r;
}

Report bool_combination_report(const BoolCombinationResult& res, std::size_t k, const RankedAlphabet& alphabet) {
    Report r;
    r.add("verdict", yes_no(res.formula.has_value()));
    r.add("k", std::to_string(k));
    r.add("nonempty-cells", join(res.nonempty_cells));
    if (res.formula)
        r.add("clauses", join(res.formula->clauses));
    if (res.witness) {
        r.add("witness-cell", res.witness->sign);
        r.add("witness-in", print_tree(res.witness->in_language, alphabet));
        r.add("witness-out", print_tree(res.witness->outside, alphabet));
    }
    return r;
}

Report equivalence_report(const TreeEquivalence& e, const RankedAlphabet& alphabet) {
    Report r;
    r.add("verdict", yes_no(e.equivalent));
    if (e.counterexample)
        r.add("counterexample", print_tree(*e.counterexample, alphabet));
    return r;
}

Report emptiness_report(const Emptiness& e, const RankedAlphabet& alphabet) {
    Report r;
    r.add("verdict", yes_no(e.empty));
    if (e.witness)
        r.add("witness", print_tree(*e.witness, alphabet));
    return r;
}

Report refutation_report(const CombRefutation& c, CombTarget target, const DtdaSet& a) {
    const auto& core = a.core();
    const auto& sigma = a.alphabet();
    std::vector<std::string> spine;
    for (auto q : c.spine)
        spine.push_back(core.state_name(q));
    Report r;
    r.add("target", target == CombTarget::T1 ? "t1" : "t2");
    r.add("spine", join(spine));
    r.add("k", std::to_string(c.k));
    r.add("p", std::to_string(c.p));
    r.add("t", print_tree(c.t, sigma));
    r.add("t'", print_tree(c.t_prime, sigma));
    r.add("reached", format_state_set(c.reached, core));
    r.add("accepted", yes_no(c.accepted));
    r.add("t-in-target", yes_no(c.t_in_target));
    r.add("t'-in-target", yes_no(c.t_prime_in_target));
    return r;
}

}  // namespace toptree
