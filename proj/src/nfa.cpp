#include "toptree/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "toptree/error.hpp"

namespace toptree {

Nfa::Nfa(std::size_t num_letters, std::size_t num_states, std::vector<StateId> initial,
         const std::vector<WordTransition>& transitions, std::vector<StateId> accepting,
         std::vector<std::string> state_names)
    : num_letters_(num_letters),
      num_states_(num_states),
      initial_(std::move(initial)),
      succ_(num_states * num_letters),
      accepting_(num_states, false),
      names_(std::move(state_names)) {
    auto check_state = [&](StateId q) {
        if (q >= num_states_)
            throw PreconditionError("word automaton: state " + std::to_string(q) + " out of range");
    };
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
    for (auto q : initial_)
        check_state(q);
    for (const auto& t : transitions) {
        check_state(t.from);
        check_state(t.to);
        if (t.letter >= num_letters_)
            throw PreconditionError("word automaton: letter " + std::to_string(t.letter) + " out of range");
        succ_[t.from * num_letters_ + t.letter].push_back(t.to);
    }
    for (auto& s : succ_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (auto q : accepting) {
        check_state(q);
        accepting_[q] = true;
    }
    if (!names_.empty() && names_.size() != num_states_)
        throw PreconditionError("word automaton: state name count mismatch");
    det_complete_ = initial_.size() == 1 &&
                    std::all_of(succ_.begin(), succ_.end(), [](const auto& s) { return s.size() == 1; });
}

std::vector<StateId> Nfa::accepting_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < num_states_; ++q)
        if (accepting_[q])
            out.push_back(q);
    return out;
}

std::vector<WordTransition> Nfa::transitions() const {
    std::vector<WordTransition> out;
    for (StateId q = 0; q < num_states_; ++q)
        for (Letter a = 0; a < num_letters_; ++a)
            for (auto r : successors(q, a))
                out.push_back({q, a, r});
    return out;
}

std::string Nfa::state_name(StateId q) const {
    if (!names_.empty())
        return names_.at(q);
    return "s" + std::to_string(q);
}

bool Nfa::accepts(std::span<const Letter> word) const {
    std::vector<bool> cur(num_states_, false);
    for (auto q : initial_)
        cur[q] = true;
    for (Letter a : word) {
        if (a >= num_letters_)
            return false;
        std::vector<bool> next(num_states_, false);
        for (StateId q = 0; q < num_states_; ++q)
            if (cur[q])
                for (auto r : successors(q, a))
                    next[r] = true;
        cur = std::move(next);
    }
    for (StateId q = 0; q < num_states_; ++q)
        if (cur[q] && accepting_[q])
            return true;
    return false;
}

namespace {

std::string subset_name(const std::vector<StateId>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace

Nfa determinize(const Nfa& a) {
    if (a.is_deterministic_complete())
        return a;
    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> subsets;
    std::vector<WordTransition> trans;
    std::vector<StateId> accepting;
    auto intern = [&](std::vector<StateId> s) {
        auto [it, fresh] = ids.emplace(s, static_cast<StateId>(subsets.size()));
        if (fresh)
            subsets.push_back(std::move(s));
        return it->second;
    };
    intern(a.initial());
    for (StateId cur = 0; cur < subsets.size(); ++cur) {
        for (Letter l = 0; l < a.num_letters(); ++l) {
            std::vector<StateId> next;
            for (auto q : subsets[cur])
                for (auto r : a.successors(q, l))
                    next.push_back(r);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            trans.push_back({cur, l, intern(std::move(next))});
        }
    }
    std::vector<std::string> names;
    for (StateId s = 0; s < subsets.size(); ++s) {
        names.push_back(subset_name(subsets[s]));
        if (std::any_of(subsets[s].begin(), subsets[s].end(), [&](StateId q) { return a.is_accepting(q); }))
            accepting.push_back(s);
    }
    return Nfa(a.num_letters(), subsets.size(), {0}, trans, accepting, std::move(names));
}

Nfa combine(const Nfa& a_in, const Nfa& b_in, BoolOp op) {
    if (a_in.num_letters() != b_in.num_letters())
        throw AlphabetMismatch("word automata over different letter counts");
    const Nfa a = determinize(a_in);
    const Nfa b = determinize(b_in);
    std::map<std::pair<StateId, StateId>, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<WordTransition> trans;
    auto intern = [&](std::pair<StateId, StateId> p) {
        auto [it, fresh] = ids.emplace(p, static_cast<StateId>(pairs.size()));
        if (fresh)
            pairs.push_back(p);
        return it->second;
    };
    intern({a.initial()[0], b.initial()[0]});
    for (StateId cur = 0; cur < pairs.size(); ++cur) {
        const auto [p, q] = pairs[cur];
        for (Letter l = 0; l < a.num_letters(); ++l)
            trans.push_back({cur, l, intern({a.successors(p, l)[0], b.successors(q, l)[0]})});
    }
    std::vector<StateId> accepting;
    std::vector<std::string> names;
    for (StateId s = 0; s < pairs.size(); ++s) {
        const bool x = a.is_accepting(pairs[s].first);
        const bool y = b.is_accepting(pairs[s].second);
        bool acc = false;
        switch (op) {
        case BoolOp::Union: acc = x || y; break;
        case BoolOp::Intersection: acc = x && y; break;
        case BoolOp::Difference: acc = x && !y; break;
        case BoolOp::SymmetricDifference: acc = x != y; break;
        }
        if (acc)
            accepting.push_back(s);
        names.push_back("(" + a.state_name(pairs[s].first) + "," + b.state_name(pairs[s].second) + ")");
    }
    return Nfa(a.num_letters(), pairs.size(), {0}, trans, accepting, std::move(names));
}

Nfa complement(const Nfa& a_in) {
    const Nfa a = determinize(a_in);
    std::vector<StateId> accepting;
    for (StateId q = 0; q < a.num_states(); ++q)
        if (!a.is_accepting(q))
            accepting.push_back(q);
    return Nfa(a.num_letters(), a.num_states(), a.initial(), a.transitions(), accepting, a.state_names());
}

Nfa minimize(const Nfa& a) {
    if (!a.is_deterministic_complete())
        throw PreconditionError("minimize_dfa: automaton is not deterministic and complete");
    const auto n = a.num_states();
    const auto k = a.num_letters();
    std::vector<bool> reachable(n, false);
    std::deque<StateId> queue{a.initial()[0]};
    reachable[a.initial()[0]] = true;
    while (!queue.empty()) {
        auto q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < k; ++l) {
            auto r = a.successors(q, l)[0];
            if (!reachable[r]) {
                reachable[r] = true;
                queue.push_back(r);
            }
        }
    }
    // Moore refinement. Block ids are handed out in increasing state order,
    // so each block is numbered by its smallest member.
    constexpr StateId none = ~StateId{0};
    std::vector<StateId> block(n, none);
    std::size_t num_blocks = 0;
    {
        std::map<bool, StateId> first;
        for (StateId q = 0; q < n; ++q)
            if (reachable[q]) {
                auto [it, fresh] = first.emplace(a.is_accepting(q), static_cast<StateId>(first.size()));
                block[q] = it->second;
            }
        num_blocks = first.size();
    }
    while (true) {
        std::map<std::vector<StateId>, StateId> sigs;
        std::vector<StateId> next(n, none);
        for (StateId q = 0; q < n; ++q) {
            if (!reachable[q])
                continue;
            std::vector<StateId> sig{block[q]};
            for (Letter l = 0; l < k; ++l)
                sig.push_back(block[a.successors(q, l)[0]]);
            auto [it, fresh] = sigs.emplace(std::move(sig), static_cast<StateId>(sigs.size()));
            next[q] = it->second;
        }
        const bool stable = sigs.size() == num_blocks;
        block = std::move(next);
        num_blocks = sigs.size();
        if (stable)
            break;
    }
    std::vector<WordTransition> trans;
    std::vector<StateId> accepting;
    std::vector<std::string> names(num_blocks);
    std::vector<bool> done(num_blocks, false);
    for (StateId q = 0; q < n; ++q) {
        if (!reachable[q] || done[block[q]])
            continue;
        done[block[q]] = true;
        names[block[q]] = a.state_name(q);
        for (Letter l = 0; l < k; ++l)
            trans.push_back({block[q], l, block[a.successors(q, l)[0]]});
        if (a.is_accepting(q))
            accepting.push_back(block[q]);
    }
    return Nfa(k, num_blocks, {block[a.initial()[0]]}, trans, accepting, std::move(names));
}

namespace {

// BFS over a deterministic complete automaton; letters are tried in order,
// so the first goal found is reached by the shortest, lexicographically
// least word.
std::optional<std::vector<Letter>> bfs_to_accepting(const Nfa& d) {
    const auto n = d.num_states();
    std::vector<StateId> parent(n, 0);
    std::vector<Letter> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue{d.initial()[0]};
    seen[d.initial()[0]] = true;
    while (!queue.empty()) {
        const auto q = queue.front();
        queue.pop_front();
        if (d.is_accepting(q)) {
            std::vector<Letter> word;
            for (StateId cur = q; cur != d.initial()[0]; cur = parent[cur])
                word.push_back(via[cur]);
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (Letter l = 0; l < d.num_letters(); ++l) {
            const auto r = d.successors(q, l)[0];
            if (!seen[r]) {
                seen[r] = true;
                parent[r] = q;
                via[r] = l;
                queue.push_back(r);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<Letter>> separating_word(const Nfa& a, const Nfa& b) {
    return bfs_to_accepting(combine(a, b, BoolOp::SymmetricDifference));
}

std::optional<std::vector<Letter>> shortest_accepted(const Nfa& a) {
    return bfs_to_accepting(determinize(a));
}

}  // namespace toptree
