#include "toptree/bottom_up.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "toptree/error.hpp"
#include "toptree/explore.hpp"

namespace toptree {

namespace {

// Sorts the rules of one symbol by (args, target) and drops duplicates.
void sort_rules(unsigned k, std::vector<StateId>& args, std::vector<StateId>& targets) {
    const auto m = targets.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto key_less = [&](std::size_t x, std::size_t y) {
        const auto* ax = args.data() + x * k;
        const auto* ay = args.data() + y * k;
        for (unsigned j = 0; j < k; ++j)
            if (ax[j] != ay[j])
                return ax[j] < ay[j];
        return targets[x] < targets[y];
    };
    bool sorted = true;
    for (std::size_t i = 1; i < m && sorted; ++i)
        sorted = key_less(order[i - 1], order[i]);
    if (sorted)
        return;
    std::sort(order.begin(), order.end(), key_less);
    std::vector<StateId> new_args;
    std::vector<StateId> new_targets;
    new_args.reserve(args.size());
    new_targets.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto r = order[i];
        if (i > 0) {
            const auto p = order[i - 1];
            if (targets[p] == targets[r] && std::equal(args.begin() + p * k, args.begin() + (p + 1) * k,
                                                       args.begin() + r * k))
                continue;
        }
        new_args.insert(new_args.end(), args.begin() + r * k, args.begin() + (r + 1) * k);
        new_targets.push_back(targets[r]);
    }
    args = std::move(new_args);
    targets = std::move(new_targets);
}

Tree from_preorder(const RankedAlphabet& sigma, const std::vector<SymbolId>& labels) {
    std::size_t pos = 0;
    auto build = [&](auto&& self) -> Tree {
        const auto label = labels[pos++];
        std::vector<Tree> kids;
        for (unsigned j = 0; j < sigma.rank(label); ++j)
            kids.push_back(self(self));
        return Tree(label, std::move(kids));
    };
    return build(build);
}

// Calls f(parts) for every split of `total` into parts.size() sizes, each
// at least 1 and each accepted by `usable`.
template <class Usable, class F>
void for_each_split(std::vector<std::size_t>& parts, std::size_t j, std::size_t total, Usable&& usable, F&& f) {
    const auto k = parts.size();
    if (j + 1 == k) {
        if (total >= 1 && usable(total)) {
            parts[j] = total;
            f(parts);
        }
        return;
    }
    for (std::size_t p = 1; p + (k - j - 1) <= total; ++p) {
        if (!usable(p))
            continue;
        parts[j] = p;
        for_each_split(parts, j + 1, total - p, usable, f);
    }
}

// Smallest tree (node count, then preorder labels) whose runs in the
// deterministic complete automata a and b end in states satisfying
// `differs`. Reachable state pairs are discovered in order of their least
// tree size without storing a product table; the search stops after the
// first size at which a distinguishing pair appears.
template <class Differs>
std::optional<Tree> smallest_distinguishing(const BottomUpTA& a, const BottomUpTA& b, Differs&& differs) {
    const auto& sigma = a.alphabet();
    std::unordered_map<std::uint64_t, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    // by_size[s]: pairs whose least tree has s nodes.
    std::vector<std::vector<StateId>> by_size(2);
    std::size_t found = 0;
    unsigned max_rank = 0;
    for (SymbolId f = 0; f < sigma.size(); ++f)
        max_rank = std::max(max_rank, sigma.rank(f));

    auto visit = [&](StateId p, StateId q, std::size_t s) -> StateId {
        const auto key = (std::uint64_t{p} << 32) | q;
        auto [it, fresh] = ids.emplace(key, static_cast<StateId>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(p, q);
            by_size[s].push_back(it->second);
            if (!found && differs(p, q))
                found = s;
        }
        return it->second;
    };
    for (SymbolId c = 0; c < sigma.size(); ++c)
        if (sigma.rank(c) == 0)
            visit(a.targets(c, {})[0], b.targets(c, {})[0], 1);

    // Visits every tuple of pair ids whose sizes follow `parts`, with the
    // per-position candidates given by `pool(size)`.
    std::vector<StateId> xa, xb, tuple;
    auto for_each_tuple = [&](const std::vector<std::size_t>& parts, auto&& pool, auto&& f) {
        const auto k = parts.size();
        tuple.assign(k, 0);
        std::vector<std::size_t> idx(k, 0);
        while (true) {
            for (std::size_t j = 0; j < k; ++j)
                tuple[j] = pool(parts[j])[idx[j]];
            f(tuple);
            std::size_t j = k;
            while (j > 0 && ++idx[j - 1] == pool(parts[j - 1]).size())
                idx[--j] = 0;
            if (j == 0)
                return;
        }
    };
    auto step = [&](SymbolId f, const std::vector<StateId>& kids) {
        xa.clear();
        xb.clear();
        for (auto id : kids) {
            xa.push_back(pairs[id].first);
            xb.push_back(pairs[id].second);
        }
        return std::pair{a.targets(f, xa)[0], b.targets(f, xb)[0]};
    };

    std::size_t last_nonempty = 1;
    std::vector<std::size_t> parts;
    for (std::size_t s = 2; !found && s - 1 <= max_rank * last_nonempty; ++s) {
        by_size.emplace_back();
        auto pool = [&](std::size_t z) -> const std::vector<StateId>& { return by_size[z]; };
        auto usable = [&](std::size_t z) { return z < s && !by_size[z].empty(); };
        for (SymbolId f = 0; f < sigma.size(); ++f) {
            const unsigned k = sigma.rank(f);
            if (k == 0)
                continue;
            parts.assign(k, 0);
            for_each_split(parts, 0, s - 1, usable, [&](const std::vector<std::size_t>& ps) {
                for_each_tuple(ps, pool, [&](const std::vector<StateId>& kids) {
                    const auto [p, q] = step(f, kids);
                    visit(p, q, s);
                });
            });
        }
        if (!by_size[s].empty())
            last_nonempty = s;
    }
    if (!found)
        return std::nullopt;

    // best[s][id]: least preorder labels of a tree of exactly s nodes
    // reaching pair id. Every such pair has been discovered since s <= found.
    using Seq = std::vector<SymbolId>;
    const auto n = pairs.size();
    std::vector<std::vector<std::optional<Seq>>> best(found + 1, std::vector<std::optional<Seq>>(n));
    std::vector<std::vector<StateId>> have(found + 1);
    for (SymbolId c = 0; c < sigma.size(); ++c)
        if (sigma.rank(c) == 0) {
            const auto id = ids.at((std::uint64_t{a.targets(c, {})[0]} << 32) | b.targets(c, {})[0]);
            if (!best[1][id] || Seq{c} < *best[1][id])
                best[1][id] = Seq{c};
        }
    Seq cand;
    for (std::size_t s = 1; s <= found; ++s) {
        auto pool = [&](std::size_t z) -> const std::vector<StateId>& { return have[z]; };
        auto usable = [&](std::size_t z) { return z < s && !have[z].empty(); };
        for (SymbolId f = 0; s > 1 && f < sigma.size(); ++f) {
            const unsigned k = sigma.rank(f);
            if (k == 0)
                continue;
            parts.assign(k, 0);
            for_each_split(parts, 0, s - 1, usable, [&](const std::vector<std::size_t>& ps) {
                for_each_tuple(ps, pool, [&](const std::vector<StateId>& kids) {
                    const auto [p, q] = step(f, kids);
                    auto& slot = best[s][ids.at((std::uint64_t{p} << 32) | q)];
                    cand.assign(1, f);
                    for (std::size_t j = 0; j < k; ++j) {
                        const auto& sub = *best[ps[j]][kids[j]];
                        cand.insert(cand.end(), sub.begin(), sub.end());
                    }
                    if (!slot || cand < *slot)
                        slot = cand;
                });
            });
        }
        for (StateId id = 0; id < n; ++id)
            if (best[s][id])
                have[s].push_back(id);
    }
    std::optional<Seq> answer;
    for (auto id : have[found])
        if (differs(pairs[id].first, pairs[id].second) && (!answer || *best[found][id] < *answer))
            answer = best[found][id];
    return from_preorder(sigma, *answer);
}

template <class Differs>
TreeEquivalence compare_languages(const BottomUpTA& a_in, const BottomUpTA& b_in, Differs&& differs) {
    // Deterministic complete inputs are used in place; they can be large.
    std::optional<BottomUpTA> da, db;
    const auto& a = a_in.is_deterministic_complete() ? a_in : da.emplace(determinize_bu(a_in));
    const auto& b = b_in.is_deterministic_complete() ? b_in : db.emplace(determinize_bu(b_in));
    TreeEquivalence out;
    if (auto t = smallest_distinguishing(a, b, [&](StateId p, StateId q) { return differs(a, b, p, q); })) {
        out.equivalent = false;
        out.counterexample = std::move(t);
    }
    return out;
}

// n^k, saturating.
std::size_t power(std::size_t n, unsigned k) {
    std::size_t out = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (n != 0 && out > std::numeric_limits<std::size_t>::max() / n)
            return std::numeric_limits<std::size_t>::max();
        out *= n;
    }
    return out;
}

}  // namespace

BottomUpTA::BottomUpTA(RankedAlphabet alphabet, std::size_t num_states, const std::vector<BuRule>& rules,
                       const std::vector<StateId>& final_states, std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)), num_states_(num_states), names_(std::move(state_names)) {
    args_.resize(alphabet_.size());
    targets_.resize(alphabet_.size());
    for (const auto& r : rules) {
        if (r.symbol >= alphabet_.size())
            throw AlphabetMismatch("rule symbol outside the alphabet");
        if (r.args.size() != alphabet_.rank(r.symbol))
            throw AlphabetMismatch("rule for '" + alphabet_.name(r.symbol) + "' has wrong arity");
        for (auto q : r.args)
            if (q >= num_states_)
                throw PreconditionError("rule argument state out of range");
        if (r.target >= num_states_)
            throw PreconditionError("rule target state out of range");
        args_[r.symbol].insert(args_[r.symbol].end(), r.args.begin(), r.args.end());
        targets_[r.symbol].push_back(r.target);
    }
    finish(final_states);
}

BottomUpTA BottomUpTA::from_flat(RankedAlphabet alphabet, std::size_t num_states,
                                 std::vector<std::vector<StateId>> args, std::vector<std::vector<StateId>> targets,
                                 const std::vector<StateId>& final_states, std::vector<std::string> state_names) {
    BottomUpTA out;
    out.alphabet_ = std::move(alphabet);
    out.num_states_ = num_states;
    out.args_ = std::move(args);
    out.targets_ = std::move(targets);
    out.names_ = std::move(state_names);
    if (out.args_.size() != out.alphabet_.size() || out.targets_.size() != out.alphabet_.size())
        throw PreconditionError("flat rule tables do not match the alphabet");
    for (SymbolId a = 0; a < out.alphabet_.size(); ++a)
        if (out.args_[a].size() != out.targets_[a].size() * out.alphabet_.rank(a))
            throw PreconditionError("flat rule table size mismatch");
    out.finish(final_states);
    return out;
}

void BottomUpTA::finish(const std::vector<StateId>& final_states) {
    final_.assign(num_states_, false);
    for (auto q : final_states) {
        if (q >= num_states_)
            throw PreconditionError("final state out of range");
        final_[q] = true;
    }
    if (!names_.empty() && names_.size() != num_states_)
        throw PreconditionError("state name count mismatch");
    det_complete_ = true;
    for (SymbolId a = 0; a < alphabet_.size(); ++a) {
        const unsigned k = alphabet_.rank(a);
        sort_rules(k, args_[a], targets_[a]);
        const auto m = targets_[a].size();
        if (m != power(num_states_, k)) {
            det_complete_ = false;
            continue;
        }
        for (std::size_t i = 1; i < m && det_complete_; ++i)
            if (std::equal(args_[a].begin() + (i - 1) * k, args_[a].begin() + i * k, args_[a].begin() + i * k))
                det_complete_ = false;
    }
}

std::size_t BottomUpTA::num_rules() const noexcept {
    std::size_t n = 0;
    for (const auto& t : targets_)
        n += t.size();
    return n;
}

std::vector<StateId> BottomUpTA::final_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < num_states_; ++q)
        if (final_[q])
            out.push_back(q);
    return out;
}

std::string BottomUpTA::state_name(StateId q) const {
    if (!names_.empty())
        return names_.at(q);
    return "q" + std::to_string(q);
}

std::span<const StateId> BottomUpTA::targets(SymbolId symbol, std::span<const StateId> args) const {
    const unsigned k = alphabet_.rank(symbol);
    const auto& flat = args_[symbol];
    const auto& tg = targets_[symbol];
    if (det_complete_) {
        // Complete tables are dense: row i lists the i-th tuple in base n.
        std::size_t i = 0;
        for (unsigned j = 0; j < k; ++j) {
            if (args[j] >= num_states_)
                return {};
            i = i * num_states_ + args[j];
        }
        return std::span<const StateId>(tg.data() + i, 1);
    }
    auto cmp = [&](std::size_t i) {
        for (unsigned j = 0; j < k; ++j)
            if (flat[i * k + j] != args[j])
                return flat[i * k + j] < args[j] ? -1 : 1;
        return 0;
    };
    std::size_t lo = 0, hi = tg.size();
    while (lo < hi) {
        const auto mid = (lo + hi) / 2;
        if (cmp(mid) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    auto end = lo;
    while (end < tg.size() && cmp(end) == 0)
        ++end;
    return std::span<const StateId>(tg.data() + lo, end - lo);
}

std::vector<BuRule> BottomUpTA::rules() const {
    std::vector<BuRule> out;
    for_each_rule([&](SymbolId a, std::span<const StateId> args, StateId q) {
        out.push_back({a, std::vector<StateId>(args.begin(), args.end()), q});
    });
    return out;
}

std::vector<StateId> BottomUpTA::reachable_states(const Tree& t) const {
    if (t.label() >= alphabet_.size() || t.children().size() != alphabet_.rank(t.label()))
        throw AlphabetMismatch("tree does not fit the automaton's alphabet");
    const unsigned k = alphabet_.rank(t.label());
    std::vector<std::vector<StateId>> child_sets;
    for (const auto& c : t.children()) {
        child_sets.push_back(reachable_states(c));
        if (child_sets.back().empty())
            return {};
    }
    std::vector<bool> child_member;
    std::vector<StateId> out;
    const auto& flat = args_[t.label()];
    const auto& tg = targets_[t.label()];
    for (std::size_t i = 0; i < tg.size(); ++i) {
        bool ok = true;
        for (unsigned j = 0; j < k && ok; ++j)
            ok = std::binary_search(child_sets[j].begin(), child_sets[j].end(), flat[i * k + j]);
        if (ok)
            out.push_back(tg[i]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool BottomUpTA::accepts(const Tree& t) const {
    const auto states = reachable_states(t);
    return std::any_of(states.begin(), states.end(), [&](StateId q) { return final_[q]; });
}

BottomUpRun run_bottomup(const BottomUpTA& a, const Tree& t) {
    if (!a.is_deterministic_complete())
        throw PreconditionError("run_bottomup requires a deterministic complete automaton");
    if (t.label() >= a.alphabet().size() || t.children().size() != a.alphabet().rank(t.label()))
        throw AlphabetMismatch("tree does not fit the automaton's alphabet");
    std::vector<StateId> args;
    args.reserve(t.children().size());
    for (const auto& c : t.children())
        args.push_back(run_bottomup(a, c).state);
    const auto q = a.targets(t.label(), args)[0];
    return {q, a.is_final(q)};
}

BottomUpTA determinize_bu(const BottomUpTA& a) {
    if (a.is_deterministic_complete())
        return a;
    const auto& sigma = a.alphabet();
    // Subset as a sorted state list.
    using Subset = std::vector<StateId>;
    std::vector<BuRule> rules = a.rules();
    std::vector<std::vector<const BuRule*>> by_symbol(sigma.size());
    for (const auto& r : rules)
        by_symbol[r.symbol].push_back(&r);
    auto normalize = [](Subset s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    };
    auto leaf = [&](SymbolId c) {
        Subset s;
        for (const auto* r : by_symbol[c])
            s.push_back(r->target);
        return normalize(std::move(s));
    };
    auto step = [&](SymbolId f, const std::vector<const Subset*>& kids) {
        Subset s;
        for (const auto* r : by_symbol[f]) {
            bool ok = true;
            for (std::size_t j = 0; j < r->args.size() && ok; ++j)
                ok = std::binary_search(kids[j]->begin(), kids[j]->end(), r->args[j]);
            if (ok)
                s.push_back(r->target);
        }
        return normalize(std::move(s));
    };
    auto accept = [&](const Subset& s) {
        return std::any_of(s.begin(), s.end(), [&](StateId q) { return a.is_final(q); });
    };
    auto namer = [&](const Subset& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "," : "") + a.state_name(s[i]);
        return out + "}";
    };
    return detail::explore_bottom_up<Subset, detail::VectorHash>(sigma, leaf, step, accept,
                                                                 std::numeric_limits<std::size_t>::max(), namer)
        .automaton;
}

BottomUpTA bool_op_bu(const BottomUpTA& a_in, const BottomUpTA& b_in, BoolOp op) {
    require_same_alphabet(a_in.alphabet(), b_in.alphabet(), "bottom-up Boolean operation");
    const auto a = determinize_bu(a_in);
    const auto b = determinize_bu(b_in);
    using Pair = std::vector<StateId>;
    auto leaf = [&](SymbolId c) { return Pair{a.targets(c, {})[0], b.targets(c, {})[0]}; };
    std::vector<StateId> xa, xb;
    auto step = [&](SymbolId f, const std::vector<const Pair*>& kids) {
        xa.clear();
        xb.clear();
        for (const auto* p : kids) {
            xa.push_back((*p)[0]);
            xb.push_back((*p)[1]);
        }
        return Pair{a.targets(f, xa)[0], b.targets(f, xb)[0]};
    };
    auto accept = [&](const Pair& p) {
        const bool x = a.is_final(p[0]);
        const bool y = b.is_final(p[1]);
        switch (op) {
        case BoolOp::Union: return x || y;
        case BoolOp::Intersection: return x && y;
        case BoolOp::Difference: return x && !y;
        case BoolOp::SymmetricDifference: return x != y;
        }
        return false;
    };
    auto namer = [&](const Pair& p) { return "(" + a.state_name(p[0]) + "," + b.state_name(p[1]) + ")"; };
    return detail::explore_bottom_up<Pair, detail::VectorHash>(a.alphabet(), leaf, step, accept,
                                                               std::numeric_limits<std::size_t>::max(), namer)
        .automaton;
}

BottomUpTA complement_bu(const BottomUpTA& a_in) {
    const auto a = determinize_bu(a_in);
    std::vector<StateId> finals;
    for (StateId q = 0; q < a.num_states(); ++q)
        if (!a.is_final(q))
            finals.push_back(q);
    std::vector<std::vector<StateId>> args(a.alphabet().size()), targets(a.alphabet().size());
    a.for_each_rule([&](SymbolId f, std::span<const StateId> xs, StateId q) {
        args[f].insert(args[f].end(), xs.begin(), xs.end());
        targets[f].push_back(q);
    });
    return BottomUpTA::from_flat(a.alphabet(), a.num_states(), std::move(args), std::move(targets), finals,
                                 a.state_names());
}

Emptiness empty_bu(const BottomUpTA& a) {
    const auto n = a.num_states();
    std::vector<std::optional<Tree>> witness(n);
    std::vector<std::size_t> height(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t h = 0;; ++h) {
        // Only states settled in earlier rounds may serve as arguments, so
        // each state's first witness has minimal height.
        std::vector<std::pair<StateId, Tree>> found;
        std::vector<bool> claimed(n, false);
        a.for_each_rule([&](SymbolId symbol, std::span<const StateId> args, StateId target) {
            if (witness[target] || claimed[target] || (h == 0) != args.empty())
                return;
            if (!std::ranges::all_of(args, [&](StateId q) { return height[q] < h; }))
                return;
            std::vector<Tree> kids;
            for (auto q : args)
                kids.push_back(*witness[q]);
            claimed[target] = true;
            found.emplace_back(target, Tree(symbol, std::move(kids)));
        });
        if (found.empty() && h > 0)
            break;
        for (auto& [q, t] : found) {
            height[q] = h;
            witness[q] = std::move(t);
            if (a.is_final(q))
                return {false, witness[q]};
        }
    }
    return {true, std::nullopt};
}

std::optional<Tree> smallest_reaching(const BottomUpTA& a, const std::vector<bool>& goal) {
    const auto n = a.num_states();
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> min_size(n, inf);
    for (bool changed = true; changed;) {
        changed = false;
        a.for_each_rule([&](SymbolId, std::span<const StateId> args, StateId target) {
            std::size_t s = 1;
            for (auto q : args) {
                if (min_size[q] == inf)
                    return;
                s += min_size[q];
            }
            if (s < min_size[target]) {
                min_size[target] = s;
                changed = true;
            }
        });
    }
    std::size_t target_size = inf;
    for (StateId q = 0; q < n; ++q)
        if (goal[q])
            target_size = std::min(target_size, min_size[q]);
    if (target_size == inf)
        return std::nullopt;

    // best[s][q]: preorder labels of the least tree of exactly s nodes
    // reaching q. Concatenating per-child optima is optimal for a fixed
    // split because the blocks have fixed lengths.
    using Seq = std::vector<SymbolId>;
    std::vector<std::vector<std::optional<Seq>>> best(target_size + 1, std::vector<std::optional<Seq>>(n));
    std::vector<std::size_t> parts;
    Seq cand;
    for (std::size_t s = 1; s <= target_size; ++s) {
        a.for_each_rule([&](SymbolId symbol, std::span<const StateId> args, StateId target) {
            if (min_size[target] > s)
                return;
            auto& slot = best[s][target];
            const auto k = args.size();
            if (k == 0) {
                if (s == 1 && (!slot || Seq{symbol} < *slot))
                    slot = Seq{symbol};
                return;
            }
            if (std::ranges::any_of(args, [&](StateId q) { return min_size[q] == inf; }))
                return;
            parts.assign(k, 0);
            auto rec = [&](auto&& self, std::size_t j, std::size_t left) -> void {
                if (j + 1 == k) {
                    if (left < min_size[args[j]] || !best[left][args[j]])
                        return;
                    parts[j] = left;
                    cand.assign(1, symbol);
                    for (std::size_t i = 0; i < k; ++i) {
                        const auto& sub = *best[parts[i]][args[i]];
                        cand.insert(cand.end(), sub.begin(), sub.end());
                    }
                    if (!slot || cand < *slot)
                        slot = cand;
                    return;
                }
                for (std::size_t p = min_size[args[j]]; p + (k - j - 1) <= left; ++p) {
                    if (!best[p][args[j]])
                        continue;
                    parts[j] = p;
                    self(self, j + 1, left - p);
                }
            };
            rec(rec, 0, s - 1);
        });
    }
    std::optional<Seq> answer;
    for (StateId q = 0; q < n; ++q)
        if (goal[q] && best[target_size][q] && (!answer || *best[target_size][q] < *answer))
            answer = best[target_size][q];
    return from_preorder(a.alphabet(), *answer);
}

std::optional<Tree> smallest_accepted(const BottomUpTA& a) {
    std::vector<bool> goal(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q)
        goal[q] = a.is_final(q);
    return smallest_reaching(a, goal);
}

TreeEquivalence equiv_bu(const BottomUpTA& a, const BottomUpTA& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "equiv_bu");
    return compare_languages(a, b, [](const BottomUpTA& x, const BottomUpTA& y, StateId p, StateId q) {
        return x.is_final(p) != y.is_final(q);
    });
}

TreeEquivalence included_bu(const BottomUpTA& a, const BottomUpTA& b) {
    require_same_alphabet(a.alphabet(), b.alphabet(), "included_bu");
    return compare_languages(a, b, [](const BottomUpTA& x, const BottomUpTA& y, StateId p, StateId q) {
        return x.is_final(p) && !y.is_final(q);
    });
}

BottomUpTA minimize_bu(const BottomUpTA& a) {
    if (!a.is_deterministic_complete())
        throw PreconditionError("minimize_bu requires a deterministic complete automaton");
    const auto& sigma = a.alphabet();
    const auto n = a.num_states();
    std::vector<bool> reachable(n, false);
    for (bool changed = true; changed;) {
        changed = false;
        a.for_each_rule([&](SymbolId, std::span<const StateId> args, StateId target) {
            if (!reachable[target] && std::ranges::all_of(args, [&](StateId q) { return reachable[q]; })) {
                reachable[target] = true;
                changed = true;
            }
        });
    }
    std::vector<StateId> live;
    for (StateId q = 0; q < n; ++q)
        if (reachable[q])
            live.push_back(q);

    // Calls f(symbol, hole, tuple) for every one-hole context a(.., [], ..)
    // whose other arguments are reachable; tuple[hole] is left for f to fill.
    std::vector<StateId> tuple;
    std::vector<std::size_t> idx;
    auto for_each_context = [&](auto&& f) {
        for (SymbolId s = 0; s < sigma.size(); ++s) {
            const unsigned k = sigma.rank(s);
            for (unsigned hole = 0; hole < k; ++hole) {
                idx.assign(k, 0);
                tuple.assign(k, 0);
                while (true) {
                    for (unsigned i = 0; i < k; ++i)
                        if (i != hole)
                            tuple[i] = live[idx[i]];
                    f(s, hole, tuple);
                    bool advanced = false;
                    for (unsigned i = k; i-- > 0 && !advanced;) {
                        if (i == hole)
                            continue;
                        advanced = ++idx[i] < live.size();
                        if (!advanced)
                            idx[i] = 0;
                    }
                    if (!advanced)
                        break;
                }
            }
        }
    };
    auto target = [&](SymbolId s, unsigned hole, std::vector<StateId>& t, StateId q) {
        t[hole] = q;
        return a.targets(s, t)[0];
    };

    // Moore refinement. Blocks are renumbered each round in order of their
    // smallest member, so the final numbering is by smallest original state.
    constexpr StateId none = ~StateId{0};
    std::vector<StateId> block(n, none);
    std::size_t num_blocks = 0;
    {
        StateId ids[2] = {none, none};
        for (auto q : live) {
            auto& id = ids[a.is_final(q)];
            if (id == none)
                id = static_cast<StateId>(num_blocks++);
            block[q] = id;
        }
    }
    std::vector<std::uint64_t> hash(n);
    while (true) {
        for (auto q : live) {
            std::uint64_t h = block[q] * 0x9e3779b97f4a7c15ULL + 1;
            for_each_context([&](SymbolId s, unsigned hole, std::vector<StateId>& t) {
                h = (h ^ block[target(s, hole, t, q)]) * 0x100000001b3ULL;
            });
            hash[q] = h;
        }
        // Candidates share block and hash; membership is confirmed exactly
        // against each new block's first member.
        std::unordered_map<std::uint64_t, std::vector<StateId>> reps;
        std::vector<StateId> next(n, none);
        std::size_t count = 0;
        for (auto q : live) {
            auto& bucket = reps[hash[q]];
            for (auto r : bucket) {
                if (block[r] != block[q])
                    continue;
                bool same = true;
                for_each_context([&](SymbolId s, unsigned hole, std::vector<StateId>& t) {
                    same = same && block[target(s, hole, t, q)] == block[target(s, hole, t, r)];
                });
                if (same) {
                    next[q] = next[r];
                    break;
                }
            }
            if (next[q] == none) {
                next[q] = static_cast<StateId>(count++);
                bucket.push_back(q);
            }
        }
        block = std::move(next);
        const bool stable = count == num_blocks;
        num_blocks = count;
        if (stable)
            break;
    }

    std::vector<StateId> rep(num_blocks, none);
    for (auto q : live)
        if (rep[block[q]] == none)
            rep[block[q]] = q;
    std::vector<StateId> finals;
    std::vector<std::string> names;
    for (StateId b = 0; b < num_blocks; ++b) {
        if (a.is_final(rep[b]))
            finals.push_back(b);
        names.push_back(a.state_name(rep[b]));
    }
    std::vector<std::vector<StateId>> args(sigma.size()), targets(sigma.size());
    for (SymbolId s = 0; s < sigma.size(); ++s) {
        const unsigned k = sigma.rank(s);
        if (k > 0 && num_blocks == 0)
            continue;
        std::vector<StateId> bt(k, 0), qt(k);
        while (true) {
            for (unsigned i = 0; i < k; ++i)
                qt[i] = rep[bt[i]];
            args[s].insert(args[s].end(), bt.begin(), bt.end());
            targets[s].push_back(block[a.targets(s, qt)[0]]);
            unsigned i = k;
            while (i > 0 && ++bt[i - 1] == num_blocks)
                bt[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return BottomUpTA::from_flat(sigma, num_blocks, std::move(args), std::move(targets), finals, std::move(names));
}

BottomUpTA from_finite_language(const RankedAlphabet& alphabet, const std::vector<Tree>& trees) {
    // Subterm ids keyed by (label, child ids); -1 is the sink.
    std::map<std::vector<long>, long> subterms;
    std::vector<bool> member;
    auto intern = [&](auto&& self, const Tree& t) -> long {
        std::vector<long> key{static_cast<long>(t.label())};
        for (const auto& c : t.children())
            key.push_back(self(self, c));
        auto [it, fresh] = subterms.emplace(std::move(key), static_cast<long>(subterms.size()));
        return it->second;
    };
    std::vector<long> accepted_ids;
    for (const auto& t : trees) {
        check_rank_consistent(t, alphabet);
        accepted_ids.push_back(intern(intern, t));
    }
    std::sort(accepted_ids.begin(), accepted_ids.end());
    auto leaf = [&](SymbolId c) -> long {
        auto it = subterms.find({static_cast<long>(c)});
        return it == subterms.end() ? -1 : it->second;
    };
    std::vector<long> key;
    auto step = [&](SymbolId f, const std::vector<const long*>& kids) -> long {
        key.assign(1, static_cast<long>(f));
        for (const auto* k : kids) {
            if (*k < 0)
                return -1;
            key.push_back(*k);
        }
        auto it = subterms.find(key);
        return it == subterms.end() ? -1 : it->second;
    };
    auto accept = [&](long id) { return id >= 0 && std::binary_search(accepted_ids.begin(), accepted_ids.end(), id); };
    auto namer = [](long id) { return id < 0 ? std::string("sink") : "s" + std::to_string(id); };
    return detail::explore_bottom_up<long>(alphabet, leaf, step, accept, std::numeric_limits<std::size_t>::max(),
                                           namer)
        .automaton;
}

RankedAlphabet comb_alphabet() {
    return RankedAlphabet({{"a", 2}, {"c", 0}, {"d", 0}, {"e", 0}});
}

BottomUpTA t1_automaton() {
    // zero, one, many occurrences of d.
    const auto sigma = comb_alphabet();
    std::vector<BuRule> rules{{1, {}, 0}, {2, {}, 1}, {3, {}, 0}};
    for (StateId x = 0; x < 3; ++x)
        for (StateId y = 0; y < 3; ++y)
            rules.push_back({0, {x, y}, std::min<StateId>(x + y, 2)});
    return BottomUpTA(sigma, 3, rules, {1}, {"zero", "one", "many"});
}

BottomUpTA t2_automaton() {
    // Leaf-word classes for "some d before some e": 0 none, 1 only e's,
    // 2 only d's, 3 e's followed by d's (both present, no d before e),
    // 4 established.
    enum : StateId { none, only_e, only_d, e_then_d, done };
    const auto sigma = comb_alphabet();
    auto has_d = [](StateId s) { return s == only_d || s == e_then_d; };
    auto has_e = [](StateId s) { return s == only_e || s == e_then_d; };
    auto combine = [&](StateId x, StateId y) -> StateId {
        if (x == done || y == done || (has_d(x) && has_e(y)))
            return done;
        const bool d = has_d(x) || has_d(y);
        const bool e = has_e(x) || has_e(y);
        if (d && e)
            return e_then_d;
        return d ? only_d : (e ? only_e : none);
    };
    std::vector<BuRule> rules{{1, {}, none}, {2, {}, only_d}, {3, {}, only_e}};
    for (StateId x = 0; x < 5; ++x)
        for (StateId y = 0; y < 5; ++y)
            rules.push_back({0, {x, y}, combine(x, y)});
    return BottomUpTA(sigma, 5, rules, {done}, {"none", "only_e", "only_d", "e_then_d", "done"});
}

}  // namespace toptree
