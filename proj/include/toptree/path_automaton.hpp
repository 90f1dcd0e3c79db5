#pragma once

#include <optional>
#include <vector>

#include "toptree/alphabet.hpp"
#include "toptree/nfa.hpp"
#include "toptree/path_word.hpp"

namespace toptree {

/// A regular set of labeled paths: a word automaton over Gamma of `alphabet`.
class PathAutomaton {
public:
    PathAutomaton(RankedAlphabet alphabet, Nfa nfa);

    const RankedAlphabet& alphabet() const noexcept { return alphabet_; }
    const Nfa& nfa() const noexcept { return nfa_; }
    bool is_deterministic_complete() const noexcept { return nfa_.is_deterministic_complete(); }
    bool accepts(const PathWord& w) const { return nfa_.accepts(w.letters); }

    /// Trie automaton for a finite set of words.
    static PathAutomaton from_words(const RankedAlphabet& alphabet, const std::vector<PathWord>& words);
    static PathAutomaton empty(const RankedAlphabet& alphabet);
    /// Every syntactically valid labeled path.
    static PathAutomaton all_paths(const RankedAlphabet& alphabet);

private:
    RankedAlphabet alphabet_;
    Nfa nfa_;
};

struct WordEquivalence {
    bool equivalent = true;
    std::optional<PathWord> counterexample;
};

PathAutomaton determinize_complete(const PathAutomaton& a);
PathAutomaton bool_op(const PathAutomaton& a, const PathAutomaton& b, BoolOp op);
PathAutomaton complement(const PathAutomaton& a);
/// Determinizes first when needed.
PathAutomaton minimize_dfa(const PathAutomaton& a);
WordEquivalence equiv_words(const PathAutomaton& a, const PathAutomaton& b);

}  // namespace toptree
