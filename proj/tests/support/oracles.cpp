#include "oracles.hpp"

#include <algorithm>
#include <functional>

#include "seed.hpp"

namespace toptree::testing {

namespace {
std::uint64_t g_seed = 0;
}

std::uint64_t base_seed() { return g_seed; }
void set_base_seed(std::uint64_t seed) { g_seed = seed; }

Rng make_rng(std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(g_seed), static_cast<std::uint32_t>(g_seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

namespace {

StateId pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<StateId>(0, n - 1)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

StateSet to_state_set(const std::set<StateId>& s) { return {s.begin(), s.end()}; }

}  // namespace

TopDownCore RawTopDown::core() const {
    std::vector<std::vector<StateId>> flat;
    for (StateId q = 0; q < n; ++q)
        for (SymbolId a = 0; a < alphabet.size(); ++a)
            flat.push_back(delta[q][a]);
    return TopDownCore(alphabet, n, initial, std::move(flat));
}

RawTopDown random_top_down(Rng& rng, const RankedAlphabet& alphabet, std::size_t n) {
    RawTopDown raw{alphabet, n, pick(rng, n), {}};
    raw.delta.resize(n);
    for (StateId q = 0; q < n; ++q)
        for (SymbolId a = 0; a < alphabet.size(); ++a) {
            std::vector<StateId> next(std::max(1u, alphabet.rank(a)));
            for (auto& r : next)
                r = pick(rng, n);
            raw.delta[q].push_back(next);
        }
    return raw;
}

std::set<StateId> random_subset(Rng& rng, std::size_t n) {
    std::set<StateId> s;
    for (StateId q = 0; q < n; ++q)
        if (coin(rng, 0.5))
            s.insert(q);
    return s;
}

std::vector<std::set<StateId>> random_family(Rng& rng, std::size_t n) {
    std::vector<std::set<StateId>> family;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (coin(rng, 0.35)) {
            std::set<StateId> s;
            for (StateId q = 0; q < n; ++q)
                if (mask >> q & 1)
                    s.insert(q);
            family.push_back(s);
        }
    return family;
}

Dtda make_dtda(const RawTopDown& raw, const std::set<StateId>& finals) {
    return Dtda(raw.core(), to_state_set(finals));
}

DtdaSet make_dtda_set(const RawTopDown& raw, const std::vector<std::set<StateId>>& family) {
    std::vector<StateSet> f;
    for (const auto& s : family)
        f.push_back(to_state_set(s));
    return DtdaSet(raw.core(), f);
}

std::set<StateId> delta_set(const RawTopDown& raw, StateId q, const Tree& t) {
    const auto& next = raw.delta[q][t.label()];
    if (t.is_leaf())
        return {next[0]};
    std::set<StateId> out;
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        auto part = delta_set(raw, next[i], t.children()[i]);
        out.insert(part.begin(), part.end());
    }
    return out;
}

bool oracle_dtda(const RawTopDown& raw, const std::set<StateId>& finals, const Tree& t) {
    return std::ranges::includes(finals, delta_set(raw, raw.initial, t));
}

bool oracle_dtda_set(const RawTopDown& raw, const std::vector<std::set<StateId>>& family, const Tree& t) {
    return std::ranges::find(family, delta_set(raw, raw.initial, t)) != family.end();
}

BottomUpTA RawBottomUp::build() const {
    return BottomUpTA(alphabet, n, rules, {finals.begin(), finals.end()});
}

RawBottomUp random_bottom_up(Rng& rng, const RankedAlphabet& alphabet, std::size_t n, double density) {
    RawBottomUp raw{alphabet, n, {}, random_subset(rng, n)};
    for (SymbolId a = 0; a < alphabet.size(); ++a) {
        const auto k = alphabet.rank(a);
        std::vector<StateId> args(k, 0);
        while (true) {
            for (StateId q = 0; q < n; ++q)
                if (coin(rng, density))
                    raw.rules.push_back({a, args, q});
            std::size_t i = 0;
            while (i < k && ++args[i] == n)
                args[i++] = 0;
            if (i == k)
                break;
        }
    }
    return raw;
}

std::set<StateId> oracle_bu_states(const RawBottomUp& raw, const Tree& t) {
    std::vector<std::set<StateId>> kids;
    for (const auto& c : t.children())
        kids.push_back(oracle_bu_states(raw, c));
    std::set<StateId> out;
    for (const auto& r : raw.rules) {
        if (r.symbol != t.label())
            continue;
        bool fits = true;
        for (std::size_t i = 0; i < r.args.size() && fits; ++i)
            fits = kids[i].count(r.args[i]) > 0;
        if (fits)
            out.insert(r.target);
    }
    return out;
}

bool oracle_bu(const RawBottomUp& raw, const Tree& t) {
    const auto s = oracle_bu_states(raw, t);
    return std::ranges::any_of(s, [&](StateId q) { return raw.finals.count(q) > 0; });
}

std::vector<std::vector<std::string>> oracle_paths(const Tree& t, const RankedAlphabet& alphabet) {
    const auto& label = alphabet.name(t.label());
    if (t.is_leaf())
        return {{label}};
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < t.children().size(); ++i)
        for (auto& rest : oracle_paths(t.children()[i], alphabet)) {
            std::vector<std::string> w{label, std::to_string(i + 1)};
            w.insert(w.end(), rest.begin(), rest.end());
            out.push_back(std::move(w));
        }
    return out;
}

std::vector<std::string> gamma_tokens(const RankedAlphabet& alphabet) {
    std::vector<std::string> out;
    for (const auto& s : alphabet.symbols())
        out.push_back(s.name);
    for (unsigned d = 1; d <= alphabet.max_rank(); ++d)
        out.push_back(std::to_string(d));
    return out;
}

PathAutomaton RawWordAutomaton::build() const {
    const auto tokens = gamma_tokens(alphabet);
    std::vector<WordTransition> trans;
    for (const auto& [key, targets] : delta) {
        const auto letter = static_cast<Letter>(std::ranges::find(tokens, key.second) - tokens.begin());
        for (auto q : targets)
            trans.push_back({key.first, letter, q});
    }
    return PathAutomaton(alphabet, Nfa(tokens.size(), n, {initial.begin(), initial.end()}, trans,
                                       {accepting.begin(), accepting.end()}));
}

bool RawWordAutomaton::accepts(const std::vector<std::string>& word) const {
    std::set<StateId> cur = initial;
    for (const auto& tok : word) {
        std::set<StateId> next;
        for (auto q : cur)
            if (auto it = delta.find({q, tok}); it != delta.end())
                next.insert(it->second.begin(), it->second.end());
        cur = std::move(next);
    }
    return std::ranges::any_of(cur, [&](StateId q) { return accepting.count(q) > 0; });
}

RawWordAutomaton random_word_automaton(Rng& rng, const RankedAlphabet& alphabet, std::size_t n, double density,
                                       bool deterministic) {
    RawWordAutomaton raw{alphabet, n, {}, {}, random_subset(rng, n)};
    raw.initial.insert(pick(rng, n));
    if (!deterministic && coin(rng, 0.3))
        raw.initial.insert(pick(rng, n));
    for (StateId q = 0; q < n; ++q)
        for (const auto& tok : gamma_tokens(alphabet)) {
            if (deterministic) {
                raw.delta[{q, tok}] = {pick(rng, n)};
                continue;
            }
            for (StateId r = 0; r < n; ++r)
                if (coin(rng, density))
                    raw.delta[{q, tok}].insert(r);
        }
    return raw;
}

std::vector<std::vector<std::string>> all_token_words(const RankedAlphabet& alphabet, std::size_t max_len) {
    const auto tokens = gamma_tokens(alphabet);
    std::vector<std::vector<std::string>> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const auto end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& tok : tokens) {
                auto w = out[i];
                w.push_back(tok);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

PathWord to_path_word(const std::vector<std::string>& tokens, const RankedAlphabet& alphabet) {
    const auto gamma = gamma_tokens(alphabet);
    PathWord w;
    for (const auto& tok : tokens)
        w.letters.push_back(static_cast<Letter>(std::ranges::find(gamma, tok) - gamma.begin()));
    return w;
}

bool oracle_tfp(const RawWordAutomaton& p, const Tree& t) {
    return std::ranges::all_of(oracle_paths(t, p.alphabet), [&](const auto& w) { return p.accepts(w); });
}

std::vector<std::string> leaf_word(const Tree& t, const RankedAlphabet& alphabet) {
    if (t.is_leaf())
        return {alphabet.name(t.label())};
    std::vector<std::string> out;
    for (const auto& c : t.children()) {
        auto part = leaf_word(c, alphabet);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool in_t1(const Tree& t, const RankedAlphabet& alphabet) {
    return std::ranges::count(leaf_word(t, alphabet), "d") == 1;
}

bool in_t2(const Tree& t, const RankedAlphabet& alphabet) {
    const auto w = leaf_word(t, alphabet);
    const auto d = std::ranges::find(w, "d");
    return d != w.end() && std::find(d, w.end(), "e") != w.end();
}

std::uint64_t count_trees(const RankedAlphabet& alphabet, std::size_t nodes) {
    // c[m]: trees with m nodes; f[k][m]: ordered k-tuples of trees with m
    // nodes in total.
    std::vector<std::uint64_t> c(nodes + 1, 0);
    const auto r = alphabet.max_rank();
    for (std::size_t m = 1; m <= nodes; ++m) {
        std::vector<std::vector<std::uint64_t>> f(r + 1, std::vector<std::uint64_t>(m, 0));
        f[0][0] = 1;
        for (unsigned k = 1; k <= r; ++k)
            for (std::size_t s = 0; s < m; ++s)
                for (std::size_t first = 1; first <= s; ++first)
                    f[k][s] += c[first] * f[k - 1][s - first];
        for (const auto& sym : alphabet.symbols())
            c[m] += f[sym.rank][m - 1];
    }
    return c[nodes];
}

Tree random_tree(Rng& rng, const RankedAlphabet& alphabet, std::size_t max_nodes) {
    const auto all = enumerate_trees(alphabet, max_nodes);
    return all.at(std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng));
}

}  // namespace toptree::testing
