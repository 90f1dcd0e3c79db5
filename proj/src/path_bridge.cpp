#include "toptree/path_bridge.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "toptree/error.hpp"
#include "toptree/explore.hpp"

namespace toptree {

namespace {

std::vector<bool> productive_states(const BottomUpTA& a) {
    std::vector<bool> productive(a.num_states(), false);
    for (bool changed = true; changed;) {
        changed = false;
        a.for_each_rule([&](SymbolId, std::span<const StateId> args, StateId target) {
            if (!productive[target] && std::ranges::all_of(args, [&](StateId q) { return productive[q]; })) {
                productive[target] = true;
                changed = true;
            }
        });
    }
    return productive;
}

}  // namespace

PathAutomaton pot_language(const BottomUpTA& a) {
    const auto& sigma = a.alphabet();
    const auto productive = productive_states(a);
    const auto n = static_cast<StateId>(a.num_states());
    std::vector<WordTransition> trans;
    std::vector<std::string> names;
    for (StateId q = 0; q < n; ++q)
        names.push_back(a.state_name(q));
    StateId next = n;
    std::vector<std::pair<SymbolId, StateId>> constant_steps;
    a.for_each_rule([&](SymbolId f, std::span<const StateId> args, StateId target) {
        // A rule with an empty argument language occurs in no tree.
        if (!productive[target] ||
            !std::all_of(args.begin(), args.end(), [&](StateId q) { return productive[q]; }))
            return;
        if (args.empty()) {
            constant_steps.emplace_back(f, target);
            return;
        }
        const StateId mid = next++;
        names.push_back(a.state_name(target) + "/" + sigma.name(f));
        trans.push_back({target, sigma.symbol_letter(f), mid});
        for (unsigned d = 1; d <= args.size(); ++d)
            trans.push_back({mid, sigma.direction_letter(d), args[d - 1]});
    });
    const StateId accept = next++;
    names.push_back("leaf");
    for (const auto& [c, q] : constant_steps)
        trans.push_back({q, sigma.symbol_letter(c), accept});
    std::vector<StateId> initial;
    for (auto q : a.final_states())
        if (productive[q])
            initial.push_back(q);
    return PathAutomaton(sigma, Nfa(sigma.num_letters(), next, initial, trans, {accept}, std::move(names)));
}

Dtda tfp_dtda(const PathAutomaton& p) {
    const auto& sigma = p.alphabet();
    const Nfa d = determinize(p.nfa());
    const auto n = d.num_states();
    std::vector<std::vector<StateId>> delta;
    delta.reserve(n * sigma.size());
    for (StateId q = 0; q < n; ++q) {
        for (SymbolId f = 0; f < sigma.size(); ++f) {
            const auto after_label = d.successors(q, sigma.symbol_letter(f))[0];
            const unsigned k = sigma.rank(f);
            if (k == 0) {
                delta.push_back({after_label});
                continue;
            }
            std::vector<StateId> kids;
            for (unsigned dir = 1; dir <= k; ++dir)
                kids.push_back(d.successors(after_label, sigma.direction_letter(dir))[0]);
            delta.push_back(std::move(kids));
        }
    }
    return Dtda(TopDownCore(sigma, n, d.initial()[0], std::move(delta), d.state_names()), d.accepting_states());
}

RecognizabilityVerdict is_dtda_recognizable(const BottomUpTA& t) {
    auto paths = pot_language(t);
    auto candidate = tfp_dtda(minimize_dfa(determinize_complete(paths)));
    const auto eq = equiv_bu(t, dtda_to_bottomup(candidate));
    return RecognizabilityVerdict{.recognizable = eq.equivalent,
                                  .path_language = std::move(paths),
                                  .candidate = std::move(candidate),
                                  .counterexample = eq.counterexample};
}

namespace {

bool in_tfp(const PathAutomaton& p, const Tree& t) {
    const auto paths = pot_tree(t, p.alphabet());
    return std::all_of(paths.begin(), paths.end(), [&](const PathWord& w) { return p.accepts(w); });
}

}  // namespace

bool DnfFormula::evaluate(const Tree& t) const {
    std::string sign;
    for (const auto& p : atoms)
        sign += in_tfp(p, t) ? '+' : '-';
    return std::find(clauses.begin(), clauses.end(), sign) != clauses.end();
}

BoolCombinationResult verify_bool_combination(const BottomUpTA& t, const std::vector<PathAutomaton>& atoms,
                                              std::size_t max_atoms) {
    if (atoms.size() > max_atoms)
        throw ResourceError("verify_bool_combination: " + std::to_string(atoms.size()) +
                            " atoms exceed the cap of " + std::to_string(max_atoms));
    for (const auto& p : atoms)
        require_same_alphabet(t.alphabet(), p.alphabet(), "verify_bool_combination");

    const auto& sigma = t.alphabet();
    std::vector<BottomUpTA> parts;
    parts.push_back(minimize_bu(determinize_bu(t)));
    for (const auto& p : atoms)
        parts.push_back(minimize_bu(dtda_to_bottomup(tfp_dtda(minimize_dfa(determinize_complete(p))))));

    // One product over T and all atoms; every product state is reached by
    // some tree, so its sign vector names a non-empty cell.
    using Tuple = std::vector<StateId>;
    auto leaf = [&](SymbolId c) {
        Tuple out;
        for (const auto& b : parts)
            out.push_back(b.targets(c, {})[0]);
        return out;
    };
    std::vector<StateId> xs;
    auto step = [&](SymbolId f, const std::vector<const Tuple*>& kids) {
        Tuple out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            xs.clear();
            for (const auto* k : kids)
                xs.push_back((*k)[i]);
            out.push_back(parts[i].targets(f, xs)[0]);
        }
        return out;
    };
    auto in_t = [&](const Tuple& s) { return parts[0].is_final(s[0]); };
    auto product = detail::explore_bottom_up<Tuple, detail::VectorHash>(
        sigma, leaf, step, in_t, std::numeric_limits<std::size_t>::max());

    auto sign_of = [&](const Tuple& s) {
        std::string sign;
        for (std::size_t i = 1; i < parts.size(); ++i)
            sign += parts[i].is_final(s[i]) ? '+' : '-';
        return sign;
    };
    struct Cell {
        bool has_in = false;
        bool has_out = false;
    };
    std::map<std::string, Cell> cells;  // '+' sorts before '-'
    for (const auto& s : product.states) {
        auto& c = cells[sign_of(s)];
        (in_t(s) ? c.has_in : c.has_out) = true;
    }

    BoolCombinationResult result;
    for (const auto& [sign, c] : cells)
        result.nonempty_cells.push_back(sign);

    const auto& pa = product.automaton;
    std::optional<WitnessPair> best;
    for (const auto& [sign, c] : cells) {
        if (!(c.has_in && c.has_out))
            continue;
        std::vector<bool> goal_in(pa.num_states(), false), goal_out(pa.num_states(), false);
        for (StateId q = 0; q < pa.num_states(); ++q) {
            const auto& s = product.states[q];
            if (sign_of(s) != sign)
                continue;
            (in_t(s) ? goal_in : goal_out)[q] = true;
        }
        auto x = smallest_reaching(pa, goal_in);
        auto y = smallest_reaching(pa, goal_out);
        if (!best || x->node_count() + y->node_count() < best->in_language.node_count() + best->outside.node_count())
            best = WitnessPair{std::move(*x), std::move(*y), sign};
    }
    if (best) {
        result.witness = std::move(best);
        return result;
    }
    DnfFormula f;
    f.k = atoms.size();
    f.atoms = atoms;
    for (const auto& [sign, c] : cells)
        if (c.has_in)
            f.clauses.push_back(sign);
    result.formula = std::move(f);
    return result;
}

}  // namespace toptree
