#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toptree/alphabet.hpp"
#include "toptree/nfa.hpp"
#include "toptree/tree.hpp"

namespace toptree {

struct BuRule {
    SymbolId symbol;
    std::vector<StateId> args;
    StateId target;
};

/// Frontier-to-root tree automaton, possibly nondeterministic.
///
/// Rules are stored per symbol in flat arrays sorted by argument tuple, so a
/// lookup is a binary search and rules with equal arguments are adjacent.
/// The deterministic-complete flag is computed, never trusted: it holds iff
/// every symbol of rank k has exactly one rule for each of the n^k argument
/// tuples.
class BottomUpTA {
public:
    BottomUpTA(RankedAlphabet alphabet, std::size_t num_states, const std::vector<BuRule>& rules,
               const std::vector<StateId>& final_states, std::vector<std::string> state_names = {});

    /// Per-symbol flat storage: `args[a]` holds rank(a) entries per rule,
    /// `targets[a]` one entry per rule. Used by the constructions that
    /// generate large rule sets.
    static BottomUpTA from_flat(RankedAlphabet alphabet, std::size_t num_states,
                                std::vector<std::vector<StateId>> args, std::vector<std::vector<StateId>> targets,
                                const std::vector<StateId>& final_states, std::vector<std::string> state_names = {});

    const RankedAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_rules() const noexcept;
    bool is_final(StateId q) const { return final_[q]; }
    std::vector<StateId> final_states() const;
    bool is_deterministic_complete() const noexcept { return det_complete_; }
    std::string state_name(StateId q) const;
    const std::vector<std::string>& state_names() const noexcept { return names_; }

    /// Targets of the rules `symbol(args) -> q`, sorted.
    std::span<const StateId> targets(SymbolId symbol, std::span<const StateId> args) const;

    template <class F>
    void for_each_rule(F&& f) const {
        for (SymbolId a = 0; a < alphabet_.size(); ++a) {
            const unsigned k = alphabet_.rank(a);
            const auto& tg = targets_[a];
            for (std::size_t i = 0; i < tg.size(); ++i)
                f(a, std::span<const StateId>(args_[a].data() + i * k, k), tg[i]);
        }
    }
    std::vector<BuRule> rules() const;

    /// States reachable at the root of `t` (the subset run).
    std::vector<StateId> reachable_states(const Tree& t) const;
    bool accepts(const Tree& t) const;

private:
    BottomUpTA() = default;
    void finish(const std::vector<StateId>& final_states);

    RankedAlphabet alphabet_;
    std::size_t num_states_ = 0;
    std::vector<std::vector<StateId>> args_;
    std::vector<std::vector<StateId>> targets_;
    std::vector<bool> final_;
    std::vector<std::string> names_;
    bool det_complete_ = false;
};

struct BottomUpRun {
    StateId state;
    bool accepted;
};

/// delta_A(t) for a deterministic complete automaton.
BottomUpRun run_bottomup(const BottomUpTA& a, const Tree& t);

/// Subset construction over reachable subsets; the empty subset is the sink
/// and appears only when some argument tuple has no rule.
BottomUpTA determinize_bu(const BottomUpTA& a);
/// Product of the determinizations (complement: flip on the determinization).
BottomUpTA bool_op_bu(const BottomUpTA& a, const BottomUpTA& b, BoolOp op);
BottomUpTA complement_bu(const BottomUpTA& a);

struct Emptiness {
    bool empty = true;
    /// An accepted tree of minimal height when non-empty.
    std::optional<Tree> witness;
};
Emptiness empty_bu(const BottomUpTA& a);

struct TreeEquivalence {
    bool equivalent = true;
    /// Smallest tree in exactly one language; ties by enumeration order.
    std::optional<Tree> counterexample;
};
TreeEquivalence equiv_bu(const BottomUpTA& a, const BottomUpTA& b);
/// T(a) subset of T(b); the counterexample lies in T(a) minus T(b).
TreeEquivalence included_bu(const BottomUpTA& a, const BottomUpTA& b);

/// Smallest accepted tree (node count, then enumeration order).
std::optional<Tree> smallest_accepted(const BottomUpTA& a);
/// Same, restricted to runs ending in a state satisfying `goal`.
std::optional<Tree> smallest_reaching(const BottomUpTA& a, const std::vector<bool>& goal);

/// Minimal deterministic complete automaton by congruence refinement.
/// Unreachable states are dropped; blocks are numbered by their smallest
/// original state. Throws PreconditionError on a non-deterministic input.
BottomUpTA minimize_bu(const BottomUpTA& a);

/// Deterministic complete automaton recognizing exactly `trees`; states are
/// the subterms of the trees plus a sink.
BottomUpTA from_finite_language(const RankedAlphabet& alphabet, const std::vector<Tree>& trees);

/// The alphabet {a:2, c:0, d:0, e:0} of the comb languages.
RankedAlphabet comb_alphabet();
/// Trees in which d occurs exactly once (states zero/one/many).
BottomUpTA t1_automaton();
/// Trees in which some d-leaf lies left of some e-leaf.
BottomUpTA t2_automaton();

}  // namespace toptree
