#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toptree/alphabet.hpp"

namespace toptree {

struct WordTransition {
    StateId from;
    Letter letter;
    StateId to;
};

/// Finite automaton on words over letters 0..num_letters-1.
///
/// The successor relation is stored densely (one sorted successor list per
/// state and letter), which suits the small alphabets used for paths and
/// frontier words.
class Nfa {
public:
    Nfa() = default;
    Nfa(std::size_t num_letters, std::size_t num_states, std::vector<StateId> initial,
        const std::vector<WordTransition>& transitions, std::vector<StateId> accepting,
        std::vector<std::string> state_names = {});

    std::size_t num_letters() const noexcept { return num_letters_; }
    std::size_t num_states() const noexcept { return num_states_; }
    const std::vector<StateId>& initial() const noexcept { return initial_; }
    std::span<const StateId> successors(StateId q, Letter a) const { return succ_[q * num_letters_ + a]; }
    bool is_accepting(StateId q) const { return accepting_[q]; }
    std::vector<StateId> accepting_states() const;
    std::vector<WordTransition> transitions() const;
    /// Exactly one initial state and exactly one successor everywhere.
    bool is_deterministic_complete() const noexcept { return det_complete_; }

    std::string state_name(StateId q) const;
    const std::vector<std::string>& state_names() const noexcept { return names_; }

    bool accepts(std::span<const Letter> word) const;

private:
    std::size_t num_letters_ = 0;
    std::size_t num_states_ = 0;
    std::vector<StateId> initial_;
    std::vector<std::vector<StateId>> succ_;
    std::vector<bool> accepting_;
    std::vector<std::string> names_;
    bool det_complete_ = false;
};

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };

/// Subset construction restricted to reachable subsets. The empty subset is
/// added as sink only when some transition needs it. State names are the
/// member lists, e.g. "{0,3}".
Nfa determinize(const Nfa& a);
/// Product of the determinizations; always deterministic and complete.
Nfa combine(const Nfa& a, const Nfa& b, BoolOp op);
Nfa complement(const Nfa& a);
/// Minimal complete DFA by partition refinement. Unreachable states are
/// dropped; blocks are numbered by their smallest original state index.
/// Throws PreconditionError unless `a` is deterministic and complete.
Nfa minimize(const Nfa& a);
/// Shortest word accepted by exactly one of the automata; ties broken by
/// the letter order. Empty optional when the languages coincide.
std::optional<std::vector<Letter>> separating_word(const Nfa& a, const Nfa& b);
/// Shortest (then lexicographically least) accepted word.
std::optional<std::vector<Letter>> shortest_accepted(const Nfa& a);

}  // namespace toptree
