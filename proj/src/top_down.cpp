#include "toptree/top_down.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <unordered_set>

#include "toptree/error.hpp"
#include "toptree/explore.hpp"

namespace toptree {

TopDownCore::TopDownCore(RankedAlphabet alphabet, std::size_t num_states, StateId initial,
                         std::vector<std::vector<StateId>> delta, std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      names_(std::move(state_names)) {
    if (num_states_ == 0 || initial_ >= num_states_)
        throw PreconditionError("top-down automaton needs an initial state in Q");
    if (delta_.size() != num_states_ * alphabet_.size())
        throw PreconditionError("transition table must be total on Q x Sigma");
    for (StateId q = 0; q < num_states_; ++q)
        for (SymbolId a = 0; a < alphabet_.size(); ++a) {
            const auto& out = delta_[q * alphabet_.size() + a];
            const std::size_t expected = std::max(1u, alphabet_.rank(a));
            if (out.size() != expected)
                throw PreconditionError("transition for state " + std::to_string(q) + " and symbol '" +
                                        alphabet_.name(a) + "' must have " + std::to_string(expected) +
                                        " target states");
            for (auto r : out)
                if (r >= num_states_)
                    throw PreconditionError("transition target out of range");
        }
    if (!names_.empty() && names_.size() != num_states_)
        throw PreconditionError("state name count mismatch");
}

std::string TopDownCore::state_name(StateId q) const {
    if (!names_.empty())
        return names_.at(q);
    return "q" + std::to_string(q);
}

std::optional<StateId> TopDownCore::find_state(std::string_view name) const {
    for (StateId q = 0; q < num_states_; ++q)
        if (state_name(q) == name)
            return q;
    return std::nullopt;
}

TopDownCore TopDownCore::with_initial(StateId q) const {
    return TopDownCore(alphabet_, num_states_, q, delta_, names_);
}

namespace {

void check_tree(const TopDownCore& core, const Tree& t) {
    check_rank_consistent(t, core.alphabet());
}

void run_path(const TopDownCore& core, const Tree& t, StateId q, Position& pos, std::vector<FrontierState>& out) {
    const auto next = core.step(q, t.label());
    if (t.is_leaf()) {
        pos.push_back(1);
        out.push_back({pos, next[0]});
        pos.pop_back();
        return;
    }
    for (unsigned d = 1; d <= t.children().size(); ++d) {
        pos.push_back(d);
        run_path(core, t.child(d), next[d - 1], pos, out);
        pos.pop_back();
    }
}

void collect_states(const TopDownCore& core, const Tree& t, StateId q, std::vector<bool>& seen) {
    const auto next = core.step(q, t.label());
    if (t.is_leaf()) {
        seen[next[0]] = true;
        return;
    }
    for (unsigned d = 1; d <= t.children().size(); ++d)
        collect_states(core, t.child(d), next[d - 1], seen);
}

StateSet to_set(const std::vector<bool>& bits) {
    StateSet out;
    for (StateId q = 0; q < bits.size(); ++q)
        if (bits[q])
            out.push_back(q);
    return out;
}

StateSet mask_to_set(std::uint64_t mask) {
    StateSet out;
    while (mask) {
        out.push_back(static_cast<StateId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

void canonicalize(std::vector<StateSet>& family) {
    for (auto& s : family) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
}

void require_powerset_size(std::size_t n, const char* what) {
    if (n > kMaxPowersetStates)
        throw ResourceError(std::string(what) + ": enumerating subsets of " + std::to_string(n) +
                            " states exceeds the cap of " + std::to_string(kMaxPowersetStates));
}

}  // namespace

std::vector<FrontierState> run_dtda_states(const TopDownCore& core, const Tree& t) {
    check_tree(core, t);
    std::vector<FrontierState> out;
    Position pos;
    run_path(core, t, core.initial(), pos, out);
    return out;
}

StateSet reached_states(const TopDownCore& core, const Tree& t) {
    check_tree(core, t);
    std::vector<bool> seen(core.num_states(), false);
    collect_states(core, t, core.initial(), seen);
    return to_set(seen);
}

Dtda::Dtda(TopDownCore core, const StateSet& final_states)
    : core_(std::move(core)), final_(core_.num_states(), false) {
    for (auto q : final_states) {
        if (q >= core_.num_states())
            throw PreconditionError("final state out of range");
        final_[q] = true;
    }
}

StateSet Dtda::final_states() const {
    return to_set(final_);
}

DtdaSet::DtdaSet(TopDownCore core, std::vector<StateSet> family) : core_(std::move(core)), family_(std::move(family)) {
    for (const auto& s : family_)
        for (auto q : s)
            if (q >= core_.num_states())
                throw PreconditionError("acceptance set mentions a state outside Q");
    canonicalize(family_);
}

bool DtdaSet::contains(const StateSet& s) const {
    return std::binary_search(family_.begin(), family_.end(), s);
}

FrontierCheckDtda::FrontierCheckDtda(TopDownCore core, Nfa check) : core_(std::move(core)), check_(std::move(check)) {
    if (check_.num_letters() != core_.num_states())
        throw AlphabetMismatch("frontier-check automaton must read exactly the states of the top-down core");
}

bool accept_dtda(const Dtda& a, const Tree& t) {
    const auto reached = reached_states(a.core(), t);
    return std::all_of(reached.begin(), reached.end(), [&](StateId q) { return a.is_final(q); });
}

SetRun accept_dtda_set(const DtdaSet& a, const Tree& t) {
    auto reached = reached_states(a.core(), t);
    const bool ok = a.contains(reached);
    return {ok, std::move(reached)};
}

bool accept_frontier_check(const FrontierCheckDtda& a, const Tree& t) {
    std::vector<Letter> word;
    for (const auto& f : run_dtda_states(a.core(), t))
        word.push_back(f.state);
    return a.check().accepts(word);
}

DtdaSet dtda_to_set(const Dtda& a) {
    const auto finals = a.final_states();
    require_powerset_size(finals.size(), "dtda_to_set");
    std::vector<StateSet> family;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << finals.size()); ++m) {
        StateSet s;
        for (std::size_t i = 0; i < finals.size(); ++i)
            if (m >> i & 1)
                s.push_back(finals[i]);
        family.push_back(std::move(s));
    }
    return DtdaSet(a.core(), std::move(family));
}

Dtda singleton_dtda(const RankedAlphabet& alphabet, const Tree& t) {
    check_rank_consistent(t, alphabet);
    // Occurrence states in preorder, then q+ and q-.
    std::vector<const Tree*> occ;
    std::vector<std::vector<StateId>> child_occ;
    auto walk = [&](auto&& self, const Tree& node) -> StateId {
        const auto id = static_cast<StateId>(occ.size());
        occ.push_back(&node);
        child_occ.emplace_back();
        std::vector<StateId> kids;
        for (const auto& c : node.children())
            kids.push_back(self(self, c));
        child_occ[id] = std::move(kids);
        return id;
    };
    walk(walk, t);
    const auto m = occ.size();
    const StateId plus = static_cast<StateId>(m), minus = static_cast<StateId>(m + 1);
    const auto n = m + 2;
    std::vector<std::vector<StateId>> delta(n * alphabet.size());
    std::vector<std::string> names;
    for (StateId q = 0; q < n; ++q) {
        for (SymbolId a = 0; a < alphabet.size(); ++a) {
            const unsigned k = alphabet.rank(a);
            auto& out = delta[q * alphabet.size() + a];
            if (q < m && occ[q]->label() == a)
                out = k == 0 ? std::vector<StateId>{plus} : child_occ[q];
            else
                out.assign(std::max(1u, k), minus);
        }
        if (q < m)
            names.push_back("q_" + alphabet.name(occ[q]->label()) + std::to_string(q));
    }
    names.push_back("q+");
    names.push_back("q-");
    return Dtda(TopDownCore(alphabet, n, 0, std::move(delta), std::move(names)), {plus});
}

DtdaSet singleton_dtda_set(const RankedAlphabet& alphabet, const Tree& t) {
    auto d = singleton_dtda(alphabet, t);
    const auto plus = d.final_states();
    return DtdaSet(d.core(), {plus});
}

DtdaSet complement_set(const DtdaSet& a) {
    const auto n = a.core().num_states();
    require_powerset_size(n, "complement_set");
    std::vector<StateSet> family;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        auto s = mask_to_set(m);
        if (!a.contains(s))
            family.push_back(std::move(s));
    }
    return DtdaSet(a.core(), std::move(family));
}

namespace {

enum class Junction { Or, And };

DtdaSet product_set(const DtdaSet& a, const DtdaSet& b, Junction j) {
    require_same_alphabet(a.alphabet(), b.alphabet(), j == Junction::Or ? "union_set" : "intersection_set");
    const auto& sigma = a.alphabet();
    const auto& ca = a.core();
    const auto& cb = b.core();
    std::map<std::pair<StateId, StateId>, StateId> ids;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId p, StateId q) {
        auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<StateId>(pairs.size()));
        if (fresh)
            pairs.emplace_back(p, q);
        return it->second;
    };
    intern(ca.initial(), cb.initial());
    std::vector<std::vector<StateId>> delta;
    for (StateId s = 0; s < pairs.size(); ++s) {
        const auto [p, q] = pairs[s];
        for (SymbolId f = 0; f < sigma.size(); ++f) {
            const auto xa = ca.step(p, f);
            const auto xb = cb.step(q, f);
            std::vector<StateId> out;
            // Child j of the product pairs the j-th projections.
            for (std::size_t i = 0; i < xa.size(); ++i)
                out.push_back(intern(xa[i], xb[i]));
            delta.push_back(std::move(out));
        }
    }
    const auto n = pairs.size();
    require_powerset_size(n, j == Junction::Or ? "union_set" : "intersection_set");
    std::vector<StateSet> family;
    StateSet left, right;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        left.clear();
        right.clear();
        for (auto s : mask_to_set(m)) {
            left.push_back(pairs[s].first);
            right.push_back(pairs[s].second);
        }
        for (auto* v : {&left, &right}) {
            std::sort(v->begin(), v->end());
            v->erase(std::unique(v->begin(), v->end()), v->end());
        }
        const bool x = a.contains(left);
        const bool y = b.contains(right);
        if (j == Junction::Or ? (x || y) : (x && y))
            family.push_back(mask_to_set(m));
    }
    std::vector<std::string> names;
    for (const auto& [p, q] : pairs)
        names.push_back(ca.state_name(p) + "." + cb.state_name(q));
    return DtdaSet(TopDownCore(sigma, n, 0, std::move(delta), std::move(names)), std::move(family));
}

// Bit set of states stored in 64-bit words; a function-state concatenates
// one such set per state of the top-down core.
struct FunctionTable {
    std::size_t num_states;
    std::size_t words;

    explicit FunctionTable(std::size_t n) : num_states(n), words((n + 63) / 64) {}

    void set(std::vector<std::uint64_t>& f, StateId q, StateId r) const { f[q * words + r / 64] |= 1ULL << (r % 64); }
    void unite(std::vector<std::uint64_t>& f, StateId q, const std::vector<std::uint64_t>& g, StateId r) const {
        for (std::size_t w = 0; w < words; ++w)
            f[q * words + w] |= g[r * words + w];
    }
    StateSet image(const std::vector<std::uint64_t>& f, StateId q) const {
        StateSet out;
        for (std::size_t w = 0; w < words; ++w) {
            auto bits = f[q * words + w];
            while (bits) {
                out.push_back(static_cast<StateId>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }
};

template <class Accept>
BottomUpTA core_to_bottomup(const TopDownCore& core, Accept&& accept_image, std::size_t cap) {
    const FunctionTable ft(core.num_states());
    using Fn = std::vector<std::uint64_t>;
    const auto n = core.num_states();
    auto leaf = [&](SymbolId c) {
        Fn f(n * ft.words, 0);
        for (StateId q = 0; q < n; ++q)
            ft.set(f, q, core.step(q, c)[0]);
        return f;
    };
    auto step = [&](SymbolId a, const std::vector<const Fn*>& kids) {
        Fn f(n * ft.words, 0);
        for (StateId q = 0; q < n; ++q) {
            const auto next = core.step(q, a);
            for (std::size_t j = 0; j < kids.size(); ++j)
                ft.unite(f, q, *kids[j], next[j]);
        }
        return f;
    };
    auto accept = [&](const Fn& f) { return accept_image(ft.image(f, core.initial())); };
    auto namer = [&](const Fn& f) {
        std::string out = "[";
        for (StateId q = 0; q < n; ++q) {
            out += q ? ";" : "";
            out += core.state_name(q) + ":";
            const auto img = ft.image(f, q);
            for (std::size_t i = 0; i < img.size(); ++i)
                out += (i ? "," : "") + core.state_name(img[i]);
        }
        return out + "]";
    };
    return detail::explore_bottom_up<Fn, detail::VectorHash>(core.alphabet(), leaf, step, accept, cap, namer)
        .automaton;
}

}  // namespace

DtdaSet union_set(const DtdaSet& a, const DtdaSet& b) {
    return product_set(a, b, Junction::Or);
}

DtdaSet intersection_set(const DtdaSet& a, const DtdaSet& b) {
    return product_set(a, b, Junction::And);
}

BottomUpTA set_to_bottomup(const DtdaSet& a, std::size_t state_cap) {
    return core_to_bottomup(a.core(), [&](const StateSet& img) { return a.contains(img); }, state_cap);
}

BottomUpTA dtda_to_bottomup(const Dtda& a, std::size_t state_cap) {
    // State of t: the bitset {q | delta_A(q, t) subset of F}.
    const auto& core = a.core();
    const auto n = core.num_states();
    const auto words = (n + 63) / 64;
    using Bits = std::vector<std::uint64_t>;
    auto has = [](const Bits& b, StateId q) { return (b[q / 64] >> (q % 64) & 1) != 0; };
    auto leaf = [&](SymbolId c) {
        Bits b(words, 0);
        for (StateId q = 0; q < n; ++q)
            if (a.is_final(core.step(q, c)[0]))
                b[q / 64] |= std::uint64_t{1} << (q % 64);
        return b;
    };
    auto step = [&](SymbolId sym, const std::vector<const Bits*>& kids) {
        Bits b(words, 0);
        for (StateId q = 0; q < n; ++q) {
            const auto next = core.step(q, sym);
            bool ok = true;
            for (std::size_t j = 0; j < kids.size() && ok; ++j)
                ok = has(*kids[j], next[j]);
            if (ok)
                b[q / 64] |= std::uint64_t{1} << (q % 64);
        }
        return b;
    };
    auto accept = [&](const Bits& b) { return has(b, core.initial()); };
    auto namer = [&](const Bits& b) {
        std::string out = "{";
        bool first = true;
        for (StateId q = 0; q < n; ++q)
            if (has(b, q)) {
                out += (first ? "" : ",") + core.state_name(q);
                first = false;
            }
        return out + "}";
    };
    return detail::explore_bottom_up<Bits, detail::VectorHash>(core.alphabet(), leaf, step, accept, state_cap, namer)
        .automaton;
}

bool DtdaFormula::evaluate(const Tree& t) const {
    std::vector<int> cache(components.size(), -1);
    auto holds = [&](const Literal& l) {
        auto& c = cache[l.component];
        if (c < 0)
            c = accept_dtda(components[l.component], t) ? 1 : 0;
        return (c == 1) == l.positive;
    };
    return std::any_of(clauses.begin(), clauses.end(), [&](const std::vector<Literal>& clause) {
        return std::all_of(clause.begin(), clause.end(), holds);
    });
}

DtdaFormula decompose_set(const DtdaSet& a) {
    DtdaFormula out;
    const auto n = a.core().num_states();
    for (const auto& f : a.family()) {
        std::vector<Literal> clause;
        clause.push_back({out.components.size(), true});
        out.components.emplace_back(a.core(), f);
        for (auto q : f) {
            StateSet others;
            for (StateId r = 0; r < n; ++r)
                if (r != q)
                    others.push_back(r);
            clause.push_back({out.components.size(), false});
            out.components.emplace_back(a.core(), others);
        }
        out.clauses.push_back(std::move(clause));
    }
    return out;
}

namespace {

// States: inner, then one per constant c, d, e.
TopDownCore leaf_label_core() {
    const auto sigma = comb_alphabet();
    std::vector<std::vector<StateId>> delta;
    for (StateId q = 0; q < 4; ++q) {
        delta.push_back({0, 0});  // a
        delta.push_back({1});     // c
        delta.push_back({2});     // d
        delta.push_back({3});     // e
    }
    return TopDownCore(sigma, 4, 0, std::move(delta), {"inner", "leaf_c", "leaf_d", "leaf_e"});
}

}  // namespace

FrontierCheckDtda t1_frontier_check() {
    // zero, one, many d's along the frontier word.
    std::vector<WordTransition> trans;
    for (StateId s = 0; s < 3; ++s)
        for (Letter l = 0; l < 4; ++l)
            trans.push_back({s, l, l == 2 ? std::min<StateId>(s + 1, 2) : s});
    return FrontierCheckDtda(leaf_label_core(), Nfa(4, 3, {0}, trans, {1}, {"zero", "one", "many"}));
}

FrontierCheckDtda t2_frontier_check() {
    std::vector<WordTransition> trans;
    for (Letter l = 0; l < 4; ++l) {
        trans.push_back({0, l, l == 2 ? StateId{1} : StateId{0}});
        trans.push_back({1, l, l == 3 ? StateId{2} : StateId{1}});
        trans.push_back({2, l, 2});
    }
    return FrontierCheckDtda(leaf_label_core(), Nfa(4, 3, {0}, trans, {2}, {"no_d", "d_seen", "d_then_e"}));
}

Tree comb_tree(const RankedAlphabet& alphabet, const std::vector<SymbolId>& left_leaf) {
    const auto a = alphabet.find("a");
    const auto c = alphabet.find("c");
    if (!a || !c || left_leaf.empty())
        throw PreconditionError("comb_tree needs symbols a and c and at least one a-node");
    Tree cur(*c);
    for (auto it = left_leaf.rbegin(); it != left_leaf.rend(); ++it)
        cur = Tree(*a, {Tree(*it), std::move(cur)});
    return cur;
}

CombRefutation comb_refutation(const DtdaSet& a, CombTarget target) {
    const auto& sigma = a.alphabet();
    const auto expected = comb_alphabet();
    {
        auto mine = sigma.symbols();
        auto want = expected.symbols();
        auto by_name = [](const Symbol& x, const Symbol& y) { return x.name < y.name; };
        std::sort(mine.begin(), mine.end(), by_name);
        std::sort(want.begin(), want.end(), by_name);
        if (mine != want)
            throw PreconditionError("comb_refutation requires the alphabet {a:2, c:0, d:0, e:0}, got [" +
                                    sigma.to_string() + "]");
    }
    const SymbolId sym_a = *sigma.find("a"), sym_c = *sigma.find("c"), sym_d = *sigma.find("d"),
                   sym_e = *sigma.find("e");
    const auto& core = a.core();

    // States at the successive a-nodes of an unbounded right spine.
    std::vector<StateId> spine;
    std::vector<std::size_t> first_seen(core.num_states(), SIZE_MAX);
    std::size_t k = 0, p = 0;
    for (StateId q = core.initial();; q = core.step(q, sym_a)[1]) {
        if (first_seen[q] != SIZE_MAX) {
            k = first_seen[q];
            p = spine.size() - k;
            break;
        }
        first_seen[q] = spine.size();
        spine.push_back(q);
    }

    const auto num_a = k + 3 * p;
    std::vector<SymbolId> left(num_a, sym_c), left_prime(num_a, sym_c);
    // The (j+1)-th a has index j.
    if (target == CombTarget::T1) {
        left[k] = sym_d;
        left_prime[k] = sym_d;
        left_prime[k + p] = sym_d;
    } else {
        left[k] = sym_d;
        left[k + p] = sym_e;
        left_prime[k + p] = sym_e;
        left_prime[k + 2 * p] = sym_d;
    }
    Tree t = comb_tree(sigma, left);
    Tree t_prime = comb_tree(sigma, left_prime);

    auto reached = reached_states(core, t);
    if (reached != reached_states(core, t_prime))
        throw Error("comb_refutation: internal verification failure, outer-frontier state sets differ");

    // Membership in the shipped target automaton, which is built over the
    // canonical symbol order.
    const auto fixture = target == CombTarget::T1 ? t1_automaton() : t2_automaton();
    auto in_target = [&](const Tree& x) { return fixture.accepts(parse_tree(print_tree(x, sigma), expected)); };
    const bool in_t = in_target(t);
    const bool in_t_prime = in_target(t_prime);
    if (!in_t || in_t_prime)
        throw Error("comb_refutation: internal verification failure, target membership does not split");
    const bool accepted = a.contains(reached);
    return CombRefutation{.spine = std::move(spine),
                          .k = k,
                          .p = p,
                          .t = std::move(t),
                          .t_prime = std::move(t_prime),
                          .reached = std::move(reached),
                          .t_in_target = in_t,
                          .t_prime_in_target = in_t_prime,
                          .accepted = accepted};
}

}  // namespace toptree
