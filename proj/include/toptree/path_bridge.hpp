#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toptree/bottom_up.hpp"
#include "toptree/path_automaton.hpp"
#include "toptree/top_down.hpp"

namespace toptree {

/// pot(T(a)) as a path NFA. States: one per tree-automaton state (expecting
/// a label), one per inner rule (expecting a direction), and one accepting
/// state entered by reading a constant. A direction d is offered only when
/// every off-path argument of the rule has a non-empty language.
PathAutomaton pot_language(const BottomUpTA& a);

/// The DTDA recognizing tfp(L(p)) = {t | pot(t) subset of L(p)}. Its states
/// are those of the complete determinization of p.
Dtda tfp_dtda(const PathAutomaton& p);

struct RecognizabilityVerdict {
    bool recognizable = false;
    PathAutomaton path_language;  // pot(T)
    Dtda candidate;               // recognizes tfp(pot(T))
    /// Smallest tree of tfp(pot(T)) outside T.
    std::optional<Tree> counterexample;
};

/// T is DTDA-recognizable iff T = tfp(pot(T)).
RecognizabilityVerdict is_dtda_recognizable(const BottomUpTA& t);

/// A DNF over the k atoms tfp(P_i): clause strings use '+' for the atom and
/// '-' for its complement.
struct DnfFormula {
    std::size_t k = 0;
    std::vector<std::string> clauses;
    std::vector<PathAutomaton> atoms;

    bool evaluate(const Tree& t) const;
};

struct WitnessPair {
    Tree in_language;
    Tree outside;
    std::string sign;  // the shared cell
};

struct BoolCombinationResult {
    std::optional<DnfFormula> formula;
    /// Present exactly when `formula` is absent.
    std::optional<WitnessPair> witness;
    /// Sign vectors of the non-empty cells, in lexicographic order ('+' < '-').
    std::vector<std::string> nonempty_cells;
};

inline constexpr std::size_t kDefaultMaxAtoms = 12;

/// Decides whether T is a union of cells of the Boolean algebra generated by
/// tfp(P_1), ..., tfp(P_k), i.e. whether every non-empty cell lies inside T
/// or outside it. Throws AlphabetMismatch or ResourceError (k > max_atoms).
BoolCombinationResult verify_bool_combination(const BottomUpTA& t, const std::vector<PathAutomaton>& atoms,
                                              std::size_t max_atoms = kDefaultMaxAtoms);

}  // namespace toptree
