#include "toptree/path_automaton.hpp"

#include <map>

#include "toptree/error.hpp"

namespace toptree {

PathAutomaton::PathAutomaton(RankedAlphabet alphabet, Nfa nfa) : alphabet_(std::move(alphabet)), nfa_(std::move(nfa)) {
    if (nfa_.num_letters() != alphabet_.num_letters())
        throw AlphabetMismatch("path automaton letter count " + std::to_string(nfa_.num_letters()) +
                               " does not match |Gamma| = " + std::to_string(alphabet_.num_letters()));
}

PathAutomaton PathAutomaton::from_words(const RankedAlphabet& alphabet, const std::vector<PathWord>& words) {
    std::map<std::pair<StateId, Letter>, StateId> trie;
    std::vector<WordTransition> trans;
    std::vector<StateId> accepting;
    StateId next = 1;
    for (const auto& w : words) {
        StateId cur = 0;
        for (Letter l : w.letters) {
            if (l >= alphabet.num_letters())
                throw AlphabetMismatch("path word letter outside Gamma");
            auto [it, fresh] = trie.emplace(std::pair{cur, l}, next);
            if (fresh) {
                trans.push_back({cur, l, next});
                ++next;
            }
            cur = it->second;
        }
        accepting.push_back(cur);
    }
    return PathAutomaton(alphabet, Nfa(alphabet.num_letters(), next, {0}, trans, accepting));
}

PathAutomaton PathAutomaton::empty(const RankedAlphabet& alphabet) {
    return PathAutomaton(alphabet, Nfa(alphabet.num_letters(), 1, {0}, {}, {}));
}

PathAutomaton PathAutomaton::all_paths(const RankedAlphabet& alphabet) {
    // 0: expect a symbol; 1: accept (after a constant); 2 + k: expect a
    // direction <= k.
    const auto r = alphabet.max_rank();
    std::vector<WordTransition> trans;
    for (SymbolId a = 0; a < alphabet.size(); ++a) {
        const auto k = alphabet.rank(a);
        trans.push_back({0, alphabet.symbol_letter(a), k == 0 ? StateId{1} : StateId{2 + k - 1}});
    }
    for (unsigned k = 1; k <= r; ++k)
        for (unsigned d = 1; d <= k; ++d)
            trans.push_back({2 + k - 1, alphabet.direction_letter(d), 0});
    return PathAutomaton(alphabet, Nfa(alphabet.num_letters(), 2 + r, {0}, trans, {1}));
}

PathAutomaton determinize_complete(const PathAutomaton& a) {
    return PathAutomaton(a.alphabet(), determinize(a.nfa()));
}

PathAutomaton bool_op(const PathAutomaton& a, const PathAutomaton& b, BoolOp op) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "path automaton Boolean operation");
    return PathAutomaton(a.alphabet(), combine(a.nfa(), b.nfa(), op));
}

PathAutomaton complement(const PathAutomaton& a) {
    return PathAutomaton(a.alphabet(), complement(a.nfa()));
}

PathAutomaton minimize_dfa(const PathAutomaton& a) {
    return PathAutomaton(a.alphabet(), minimize(determinize(a.nfa())));
}

WordEquivalence equiv_words(const PathAutomaton& a, const PathAutomaton& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "equiv_words");
    WordEquivalence out;
    if (auto w = separating_word(a.nfa(), b.nfa())) {
        out.equivalent = false;
        out.counterexample = PathWord{std::move(*w)};
    }
    return out;
}

}  // namespace toptree
