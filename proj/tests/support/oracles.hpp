#pragma once

// Randomized instances and brute-force reference semantics. Every oracle
// here works on plain tables and recursion over the tree, never on the
// library's run functions.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "toptree/bottom_up.hpp"
#include "toptree/path_automaton.hpp"
#include "toptree/top_down.hpp"
#include "toptree/tree.hpp"

namespace toptree::testing {

using Rng = std::mt19937_64;

/// Generator seeded from the base seed and a per-test stream id.
Rng make_rng(std::uint64_t stream);

/// Transition table of a top-down automaton: delta[q][a] lists the child
/// states (one entry for constants).
struct RawTopDown {
    RankedAlphabet alphabet;
    std::size_t n = 0;
    StateId initial = 0;
    std::vector<std::vector<std::vector<StateId>>> delta;

    TopDownCore core() const;
};

RawTopDown random_top_down(Rng& rng, const RankedAlphabet& alphabet, std::size_t n);
std::set<StateId> random_subset(Rng& rng, std::size_t n);
std::vector<std::set<StateId>> random_family(Rng& rng, std::size_t n);

Dtda make_dtda(const RawTopDown& raw, const std::set<StateId>& finals);
DtdaSet make_dtda_set(const RawTopDown& raw, const std::vector<std::set<StateId>>& family);

/// delta(q, t) by the recursive definition.
std::set<StateId> delta_set(const RawTopDown& raw, StateId q, const Tree& t);
bool oracle_dtda(const RawTopDown& raw, const std::set<StateId>& finals, const Tree& t);
bool oracle_dtda_set(const RawTopDown& raw, const std::vector<std::set<StateId>>& family, const Tree& t);

/// Rule list of a possibly nondeterministic bottom-up automaton.
struct RawBottomUp {
    RankedAlphabet alphabet;
    std::size_t n = 0;
    std::vector<BuRule> rules;
    std::set<StateId> finals;

    BottomUpTA build() const;
};

/// Each possible rule is present with probability `density`.
RawBottomUp random_bottom_up(Rng& rng, const RankedAlphabet& alphabet, std::size_t n, double density);
std::set<StateId> oracle_bu_states(const RawBottomUp& raw, const Tree& t);
bool oracle_bu(const RawBottomUp& raw, const Tree& t);

/// Path words of a tree as token lists, e.g. {"a","1","b","2","d"}.
std::vector<std::vector<std::string>> oracle_paths(const Tree& t, const RankedAlphabet& alphabet);

/// Word automaton over token strings.
struct RawWordAutomaton {
    RankedAlphabet alphabet;
    std::size_t n = 0;
    std::set<StateId> initial;
    std::map<std::pair<StateId, std::string>, std::set<StateId>> delta;
    std::set<StateId> accepting;

    PathAutomaton build() const;
    bool accepts(const std::vector<std::string>& word) const;
};

/// All tokens of Gamma in letter order.
std::vector<std::string> gamma_tokens(const RankedAlphabet& alphabet);
RawWordAutomaton random_word_automaton(Rng& rng, const RankedAlphabet& alphabet, std::size_t n, double density,
                                       bool deterministic);
/// Every word over Gamma up to `max_len` tokens (valid paths or not).
std::vector<std::vector<std::string>> all_token_words(const RankedAlphabet& alphabet, std::size_t max_len);
PathWord to_path_word(const std::vector<std::string>& tokens, const RankedAlphabet& alphabet);

/// t in tfp(L): every path of t accepted.
bool oracle_tfp(const RawWordAutomaton& p, const Tree& t);

/// Left-to-right leaf labels.
std::vector<std::string> leaf_word(const Tree& t, const RankedAlphabet& alphabet);
bool in_t1(const Tree& t, const RankedAlphabet& alphabet);
bool in_t2(const Tree& t, const RankedAlphabet& alphabet);

/// Number of rank-consistent trees with exactly `nodes` nodes.
std::uint64_t count_trees(const RankedAlphabet& alphabet, std::size_t nodes);

Tree random_tree(Rng& rng, const RankedAlphabet& alphabet, std::size_t max_nodes);

}  // namespace toptree::testing
