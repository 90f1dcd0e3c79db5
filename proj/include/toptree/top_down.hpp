#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toptree/alphabet.hpp"
#include "toptree/bottom_up.hpp"
#include "toptree/nfa.hpp"
#include "toptree/tree.hpp"

namespace toptree {

/// Sorted, duplicate-free list of states.
using StateSet = std::vector<StateId>;

/// Transition structure (Q, q0, delta) of a deterministic top-down automaton.
/// delta is total: for each state q and symbol a of rank k >= 1, step(q, a)
/// holds the k child states; for a constant c it holds the single state
/// deposited at the outer frontier.
class TopDownCore {
public:
    TopDownCore(RankedAlphabet alphabet, std::size_t num_states, StateId initial,
                std::vector<std::vector<StateId>> delta, std::vector<std::string> state_names = {});

    const RankedAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return num_states_; }
    StateId initial() const noexcept { return initial_; }
    std::span<const StateId> step(StateId q, SymbolId a) const { return delta_[q * alphabet_.size() + a]; }
    std::string state_name(StateId q) const;
    const std::vector<std::string>& state_names() const noexcept { return names_; }
    std::optional<StateId> find_state(std::string_view name) const;

    /// Same transitions, different initial state.
    TopDownCore with_initial(StateId q) const;

private:
    RankedAlphabet alphabet_;
    std::size_t num_states_;
    StateId initial_;
    std::vector<std::vector<StateId>> delta_;
    std::vector<std::string> names_;
};

struct FrontierState {
    Position position;  // an element of fr+(t)
    StateId state;
};

/// The state at every outer-frontier position, left to right.
std::vector<FrontierState> run_dtda_states(const TopDownCore& core, const Tree& t);
/// delta_A(q0, t): the set of states at the outer frontier.
StateSet reached_states(const TopDownCore& core, const Tree& t);

class Dtda {
public:
    Dtda(TopDownCore core, const StateSet& final_states);

    const TopDownCore& core() const noexcept { return core_; }
    const RankedAlphabet& alphabet() const noexcept { return core_.alphabet(); }
    bool is_final(StateId q) const { return final_[q]; }
    StateSet final_states() const;

private:
    TopDownCore core_;
    std::vector<bool> final_;
};

/// DTDA with set acceptance: accepts t iff delta_A(q0, t) is a member of the
/// family. The family is kept canonical (sorted sets, sorted list, no
/// duplicates).
class DtdaSet {
public:
    DtdaSet(TopDownCore core, std::vector<StateSet> family);

    const TopDownCore& core() const noexcept { return core_; }
    const RankedAlphabet& alphabet() const noexcept { return core_.alphabet(); }
    const std::vector<StateSet>& family() const noexcept { return family_; }
    bool contains(const StateSet& s) const;

private:
    TopDownCore core_;
    std::vector<StateSet> family_;
};

/// DTDA whose acceptance is delegated to a word automaton reading the
/// left-to-right outer-frontier state sequence; letters are core states.
class FrontierCheckDtda {
public:
    FrontierCheckDtda(TopDownCore core, Nfa check);

    const TopDownCore& core() const noexcept { return core_; }
    const RankedAlphabet& alphabet() const noexcept { return core_.alphabet(); }
    const Nfa& check() const noexcept { return check_; }

private:
    TopDownCore core_;
    Nfa check_;
};

bool accept_dtda(const Dtda& a, const Tree& t);

struct SetRun {
    bool accepted;
    StateSet reached;
};
SetRun accept_dtda_set(const DtdaSet& a, const Tree& t);
bool accept_frontier_check(const FrontierCheckDtda& a, const Tree& t);

/// Largest state count for which families over all subsets are enumerated.
inline constexpr std::size_t kMaxPowersetStates = 24;

/// Family {R : R subset of F}, including the empty set.
DtdaSet dtda_to_set(const Dtda& a);

/// The automaton for {t}: one state per symbol occurrence plus q+ and q-,
/// final set {q+}.
Dtda singleton_dtda(const RankedAlphabet& alphabet, const Tree& t);
/// Same transitions with family {{q+}}.
DtdaSet singleton_dtda_set(const RankedAlphabet& alphabet, const Tree& t);

/// Family 2^Q minus F.
DtdaSet complement_set(const DtdaSet& a);
/// Product over the pairs reachable from (q0, q0'); R is accepted iff one of
/// its projections is accepted by the respective factor.
DtdaSet union_set(const DtdaSet& a, const DtdaSet& b);
/// Same product; R is accepted iff both projections are accepted.
DtdaSet intersection_set(const DtdaSet& a, const DtdaSet& b);

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Deterministic bottom-up automaton whose state for a subtree t is the map
/// q -> delta_A(q, t). Only maps reachable from the constants are built.
BottomUpTA set_to_bottomup(const DtdaSet& a, std::size_t state_cap = kDefaultStateCap);
/// Deterministic bottom-up automaton whose state for t is the set of q with
/// delta_A(q, t) subset of F.
BottomUpTA dtda_to_bottomup(const Dtda& a, std::size_t state_cap = kDefaultStateCap);

struct Literal {
    std::size_t component;
    bool positive;
};

/// Disjunction of conjunctions of (possibly negated) plain DTDA languages.
struct DtdaFormula {
    std::vector<Dtda> components;
    std::vector<std::vector<Literal>> clauses;

    bool evaluate(const Tree& t) const;
};

/// For each F_i in the family: [F_i] and, for each q in F_i, not [Q \ {q}].
DtdaFormula decompose_set(const DtdaSet& a);

/// Frontier-check recognizers over comb_alphabet(): one state per leaf
/// label plus an inner state; the word automaton counts d's (T1) or looks
/// for a d before an e (T2).
FrontierCheckDtda t1_frontier_check();
FrontierCheckDtda t2_frontier_check();

enum class CombTarget { T1, T2 };

struct CombRefutation {
    /// States at the successive a-nodes of the right spine until the first
    /// repetition.
    std::vector<StateId> spine;
    std::size_t k = 0;  // index of the first spine state that reappears
    std::size_t p = 0;  // distance to its reappearance
    Tree t;
    Tree t_prime;
    StateSet reached;   // delta_A(q0, t) = delta_A(q0, t')
    bool t_in_target = false;
    bool t_prime_in_target = false;
    bool accepted = false;  // A's verdict, identical on t and t'
};

/// Right comb with `num_a` inner a-nodes; `left_leaf[j]` labels the left
/// child of the (j+1)-th a. The last a gets c as its right child too.
Tree comb_tree(const RankedAlphabet& alphabet, const std::vector<SymbolId>& left_leaf);

/// Builds the two combs of the pumping argument against `target` and checks
/// that A cannot tell them apart although exactly one is in the target
/// language. Requires A over {a:2, c:0, d:0, e:0} (PreconditionError).
CombRefutation comb_refutation(const DtdaSet& a, CombTarget target);

}  // namespace toptree
