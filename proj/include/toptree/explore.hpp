#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "toptree/bottom_up.hpp"
#include "toptree/error.hpp"

namespace toptree::detail {

template <class State>
struct Explored {
    BottomUpTA automaton;
    std::deque<State> states;
};

/// Builds a deterministic complete bottom-up automaton whose states are the
/// values of `State` reachable from the constants. `leaf(c)` gives the state
/// of constant c, `step(a, args)` the state of a(t1..tk) given pointers to
/// the children's states. Each argument tuple is visited exactly once: when
/// state s is processed, only tuples over states <= s that contain s are
/// formed.
template <class State, class Hash = std::hash<State>, class Leaf, class Step, class Accept>
Explored<State> explore_bottom_up(const RankedAlphabet& alphabet, Leaf&& leaf, Step&& step, Accept&& accept,
                                  std::size_t state_cap,
                                  std::function<std::string(const State&)> namer = nullptr) {
    std::unordered_map<State, StateId, Hash> ids;
    std::deque<State> states;
    std::vector<std::vector<StateId>> args(alphabet.size());
    std::vector<std::vector<StateId>> targets(alphabet.size());

    auto intern = [&](State s) -> StateId {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        if (states.size() >= state_cap)
            throw ResourceError("bottom-up construction exceeded the cap of " + std::to_string(state_cap) +
                                " states");
        const auto id = static_cast<StateId>(states.size());
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };

    for (SymbolId c = 0; c < alphabet.size(); ++c)
        if (alphabet.rank(c) == 0)
            targets[c].push_back(intern(leaf(c)));

    std::vector<SymbolId> inner;
    for (SymbolId a = 0; a < alphabet.size(); ++a)
        if (alphabet.rank(a) > 0)
            inner.push_back(a);

    std::vector<StateId> tuple;
    std::vector<const State*> ptrs;
    for (StateId s = 0; s < states.size(); ++s) {
        for (SymbolId a : inner) {
            const unsigned k = alphabet.rank(a);
            tuple.assign(k, 0);
            ptrs.assign(k, nullptr);
            for (unsigned first = 0; first < k; ++first) {
                // Positions before `first` range over [0, s), `first` is s,
                // positions after it range over [0, s].
                if (first > 0 && s == 0)
                    continue;
                for (unsigned j = 0; j < k; ++j)
                    tuple[j] = 0;
                tuple[first] = s;
                while (true) {
                    for (unsigned j = 0; j < k; ++j)
                        ptrs[j] = &states[tuple[j]];
                    State next = step(a, ptrs);
                    const auto target = intern(std::move(next));
                    args[a].insert(args[a].end(), tuple.begin(), tuple.end());
                    targets[a].push_back(target);
                    // Advance the odometer, skipping position `first`.
                    unsigned j = k;
                    bool done = true;
                    while (j > 0) {
                        --j;
                        if (j == first)
                            continue;
                        const StateId bound = j < first ? s : s + 1;
                        if (++tuple[j] < bound) {
                            done = false;
                            break;
                        }
                        tuple[j] = 0;
                    }
                    if (done)
                        break;
                }
            }
        }
    }

    std::vector<StateId> finals;
    std::vector<std::string> names;
    for (StateId q = 0; q < states.size(); ++q) {
        if (accept(states[q]))
            finals.push_back(q);
        if (namer)
            names.push_back(namer(states[q]));
    }
    // Lay each table out densely in tuple order so no sort is needed.
    const std::size_t n = states.size();
    for (SymbolId a : inner) {
        const unsigned k = alphabet.rank(a);
        std::vector<StateId> dense(targets[a].size());
        for (std::size_t i = 0; i < targets[a].size(); ++i) {
            std::size_t pos = 0;
            for (unsigned j = 0; j < k; ++j)
                pos = pos * n + args[a][i * k + j];
            dense[pos] = targets[a][i];
        }
        targets[a] = std::move(dense);
        auto& flat = args[a];
        tuple.assign(k, 0);
        for (std::size_t i = 0; i < targets[a].size(); ++i) {
            std::copy(tuple.begin(), tuple.end(), flat.begin() + i * k);
            for (unsigned j = k; j > 0 && ++tuple[j - 1] == n; --j)
                tuple[j - 1] = 0;
        }
    }
    auto automaton =
        BottomUpTA::from_flat(alphabet, n, std::move(args), std::move(targets), finals, std::move(names));
    return Explored<State>{std::move(automaton), std::move(states)};
}

struct VectorHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const noexcept {
        std::size_t h = v.size();
        for (const auto& x : v)
            h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace toptree::detail
