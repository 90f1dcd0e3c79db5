#include <doctest.h>

#include <algorithm>
#include <set>

#include "support/oracles.hpp"
#include "toptree/error.hpp"
#include "toptree/path_bridge.hpp"
#include "toptree/text_format.hpp"

using namespace toptree;
using namespace toptree::testing;

namespace {

RankedAlphabet t0() { return RankedAlphabet::parse("f:2 a:0 b:0"); }
RankedAlphabet fig1() { return RankedAlphabet::parse("a:2 b:2 c:0 d:0"); }

std::string fixture(const char* name) { return std::string(TOPTREE_FIXTURE_DIR) + "/" + name; }

PathAutomaton fig1_paths() {
    return std::get<PathAutomaton>(read_automaton_file(fixture("fig1-paths.pathdfa")).automaton);
}

PathAutomaton words(const RankedAlphabet& sigma, std::initializer_list<const char*> ws) {
    std::vector<PathWord> out;
    for (const auto* w : ws)
        out.push_back(parse_path_word(w, sigma));
    return PathAutomaton::from_words(sigma, out);
}

BottomUpTA finite(const RankedAlphabet& sigma, std::initializer_list<const char*> texts) {
    std::vector<Tree> trees;
    for (const auto* s : texts)
        trees.push_back(parse_tree(s, sigma));
    return from_finite_language(sigma, trees);
}

bool tfp_member(const PathAutomaton& p, const Tree& t) {
    return std::ranges::all_of(pot_tree(t, p.alphabet()), [&](const PathWord& w) { return p.accepts(w); });
}

std::string sign_of(const std::vector<PathAutomaton>& atoms, const Tree& t) {
    std::string s;
    for (const auto& p : atoms)
        s += tfp_member(p, t) ? '+' : '-';
    return s;
}

}  // namespace

TEST_CASE("pot_language examples") {
    const auto fsig = fig1();
    const auto single = pot_language(finite(fsig, {"a(b(c,d),c)"}));
    CHECK(equiv_words(single, words(fsig, {"a1b1c", "a1b2d", "a2c"})).equivalent);
    const auto sigma = t0();
    CHECK(equiv_words(pot_language(finite(sigma, {"f(a,b)", "f(b,a)"})), words(sigma, {"f1a", "f1b", "f2a", "f2b"}))
              .equivalent);
    CHECK(equiv_words(pot_language(finite(sigma, {})), PathAutomaton::empty(sigma)).equivalent);
}

TEST_CASE("pot_language skips rules with empty off-path arguments") {
    const auto sigma = t0();
    // f(q, dead) is the only rule into the final state; dead has no tree.
    const BottomUpTA a(sigma, 3, {{1, {}, 0}, {0, {0, 1}, 2}}, {2});
    CHECK(empty_bu(a).empty);
    CHECK(equiv_words(pot_language(a), PathAutomaton::empty(sigma)).equivalent);
}

TEST_CASE("tfp_dtda on the seven-path fixture") {
    const auto sigma = fig1();
    const auto p = fig1_paths();
    const auto d = tfp_dtda(p);
    std::vector<std::string> accepted;
    std::set<std::string> used_paths;
    for (const auto& t : enumerate_trees(sigma, 7))
        if (accept_dtda(d, t)) {
            accepted.push_back(print_tree(t, sigma));
            for (const auto& w : pot_tree(t, sigma))
                used_paths.insert(print_path_word(w, sigma, true));
        }
    std::ranges::sort(accepted);
    CHECK(accepted == std::vector<std::string>{"a(a(d,c),c)", "a(a(d,c),d)", "a(b(c,d),c)", "a(b(c,d),d)"});
    CHECK(p.accepts(parse_path_word("b2c", sigma)));
    CHECK_FALSE(used_paths.count("b2c"));
    CHECK(equiv_bu(dtda_to_bottomup(d), finite(sigma, {"a(a(d,c),c)", "a(a(d,c),d)", "a(b(c,d),c)", "a(b(c,d),d)"}))
              .equivalent);
}

TEST_CASE("tfp_dtda trivial path sets") {
    const auto sigma = fig1();
    const auto none = tfp_dtda(PathAutomaton::empty(sigma));
    const auto all = tfp_dtda(PathAutomaton::all_paths(sigma));
    for (const auto& t : enumerate_trees(sigma, 5)) {
        CHECK_FALSE(accept_dtda(none, t));
        CHECK(accept_dtda(all, t));
    }
}

TEST_CASE("is_dtda_recognizable examples") {
    const auto sigma = t0();
    const auto v = is_dtda_recognizable(finite(sigma, {"f(a,b)", "f(b,a)"}));
    CHECK_FALSE(v.recognizable);
    REQUIRE(v.counterexample);
    const auto ce = print_tree(*v.counterexample, sigma);
    CHECK((ce == "f(a,a)" || ce == "f(b,b)"));
    CHECK(accept_dtda(v.candidate, *v.counterexample));

    const auto fig = is_dtda_recognizable(dtda_to_bottomup(tfp_dtda(fig1_paths())));
    CHECK(fig.recognizable);
    CHECK_FALSE(fig.counterexample);

    const auto empty = is_dtda_recognizable(finite(sigma, {}));
    CHECK(empty.recognizable);
    CHECK(equiv_words(empty.path_language, PathAutomaton::empty(sigma)).equivalent);
}

TEST_CASE("verify_bool_combination on a single atom") {
    const auto p = fig1_paths();
    const auto t = dtda_to_bottomup(tfp_dtda(p));
    const auto r = verify_bool_combination(t, {p});
    REQUIRE(r.formula);
    CHECK(r.formula->clauses == std::vector<std::string>{"+"});
    CHECK_FALSE(r.witness);
}

TEST_CASE("verify_bool_combination on T0") {
    const auto sigma = t0();
    const auto t = finite(sigma, {"f(a,b)", "f(b,a)"});
    const auto p_ab = pot_language(finite(sigma, {"f(a,b)"}));
    const auto p_ba = pot_language(finite(sigma, {"f(b,a)"}));

    // tfp(pot({f(a,b)})) = {f(a,b)}, so the two atoms are singletons and
    // T0 is the union of the cells +- and -+.
    const auto r = verify_bool_combination(t, {p_ab, p_ba});
    REQUIRE(r.formula);
    CHECK(r.formula->clauses == std::vector<std::string>{"+-", "-+"});
    CHECK(r.nonempty_cells == std::vector<std::string>{"+-", "-+", "--"});
    for (const auto& u : enumerate_trees(sigma, 7))
        CHECK(r.formula->evaluate(u) == t.accepts(u));

    // With the single atom pot(T0) the cell + holds f(a,a) and f(a,b).
    const auto one = verify_bool_combination(t, {pot_language(t)});
    CHECK_FALSE(one.formula);
    REQUIRE(one.witness);
    CHECK(t.accepts(one.witness->in_language));
    CHECK_FALSE(t.accepts(one.witness->outside));
    CHECK(one.witness->sign == "+");
    CHECK(sign_of({pot_language(t)}, one.witness->in_language) == "+");
    CHECK(sign_of({pot_language(t)}, one.witness->outside) == "+");

    CHECK_THROWS_AS(verify_bool_combination(t, {fig1_paths()}), AlphabetMismatch);
    CHECK_THROWS_AS(verify_bool_combination(t, std::vector<PathAutomaton>(13, p_ab)), ResourceError);
}

TEST_CASE("verify_bool_combination on a union of singletons with distinct roots") {
    const auto sigma = RankedAlphabet::parse("f:2 g:2 a:0 b:0");
    const auto t = finite(sigma, {"f(a,b)", "g(b,b)"});
    const auto r = verify_bool_combination(t, {pot_language(finite(sigma, {"f(a,b)"})),
                                              pot_language(finite(sigma, {"g(b,b)"}))});
    REQUIRE(r.formula);
    for (const auto& u : enumerate_trees(sigma, 7))
        CHECK(r.formula->evaluate(u) == t.accepts(u));
}

TEST_CASE("pot and tfp laws on random path automata") {
    auto rng = make_rng(61);
    const auto sigma = RankedAlphabet::parse("f:2 a:0 b:0");
    const auto trees = enumerate_trees(sigma, 7);
    const auto token_words = all_token_words(sigma, 7);
    for (int i = 0; i < 30; ++i) {
        const auto raw = random_word_automaton(rng, sigma, 2 + i % 4, 0.3, i % 2 == 0);
        const auto p = raw.build();
        const auto d = tfp_dtda(p);
        const auto bu = dtda_to_bottomup(d);
        for (const auto& t : trees)
            CHECK(accept_dtda(d, t) == oracle_tfp(raw, t));

        // pot(tfp(P)) is inside P.
        const auto back = pot_language(bu);
        for (const auto& w : token_words) {
            const auto pw = to_path_word(w, sigma);
            if (back.accepts(pw))
                CHECK(raw.accepts(w));
        }
        // tfp languages are recognizable and the candidate is the language.
        const auto v = is_dtda_recognizable(bu);
        CHECK(v.recognizable);
        CHECK(equiv_bu(dtda_to_bottomup(v.candidate), bu).equivalent);
    }
}

TEST_CASE("T(A) is inside tfp(pot(T(A))) for random tree automata") {
    auto rng = make_rng(62);
    const auto sigma = RankedAlphabet::parse("f:2 a:0 b:0");
    const auto trees = enumerate_trees(sigma, 7);
    for (int i = 0; i < 60; ++i) {
        const auto raw = random_bottom_up(rng, sigma, 1 + i % 4, 0.3);
        const auto a = raw.build();
        const auto v = is_dtda_recognizable(a);
        CHECK(included_bu(a, dtda_to_bottomup(v.candidate)).equivalent);
        for (const auto& t : trees) {
            if (oracle_bu(raw, t))
                CHECK(accept_dtda(v.candidate, t));
        }
        if (v.recognizable) {
            for (const auto& t : trees)
                CHECK(accept_dtda(v.candidate, t) == oracle_bu(raw, t));
        } else {
            REQUIRE(v.counterexample);
            CHECK(accept_dtda(v.candidate, *v.counterexample));
            CHECK_FALSE(oracle_bu(raw, *v.counterexample));
        }
        // pot(T) by brute force over the enumerated trees is inside the NFA.
        for (const auto& t : trees)
            if (oracle_bu(raw, t))
                for (const auto& w : pot_tree(t, sigma))
                    CHECK(v.path_language.accepts(w));
    }
}

TEST_CASE("verify_bool_combination certificates against brute-force cells") {
    auto rng = make_rng(63);
    const auto sigma = RankedAlphabet::parse("f:2 a:0 b:0");
    const auto trees = enumerate_trees(sigma, 7);
    int with_formula = 0;
    for (int i = 0; i < 40; ++i) {
        const std::size_t k = 1 + i % 3;
        std::vector<PathAutomaton> atoms;
        for (std::size_t j = 0; j < k; ++j)
            atoms.push_back(random_word_automaton(rng, sigma, 2 + (i + j) % 3, 0.0, true).build());
        const auto raw = random_bottom_up(rng, sigma, 1 + i % 3, 0.3);
        const auto t = raw.build();
        const auto r = verify_bool_combination(t, atoms);
        CHECK(r.formula.has_value() != r.witness.has_value());
        // Cells that are inhomogeneous among the enumerated trees.
        std::map<std::string, std::pair<bool, bool>> seen;
        for (const auto& u : trees) {
            auto& [in, out] = seen[sign_of(atoms, u)];
            (oracle_bu(raw, u) ? in : out) = true;
        }
        const bool mixed = std::ranges::any_of(seen, [](const auto& kv) { return kv.second.first && kv.second.second; });
        if (mixed)
            CHECK_FALSE(r.formula);
        for (const auto& [cell, flags] : seen)
            CHECK(std::ranges::binary_search(r.nonempty_cells, cell));
        if (r.formula) {
            ++with_formula;
            for (const auto& u : trees)
                CHECK(r.formula->evaluate(u) == oracle_bu(raw, u));
        } else {
            const auto& w = *r.witness;
            CHECK(oracle_bu(raw, w.in_language));
            CHECK_FALSE(oracle_bu(raw, w.outside));
            CHECK(sign_of(atoms, w.in_language) == w.sign);
            CHECK(sign_of(atoms, w.outside) == w.sign);
        }
    }
    CHECK(with_formula > 0);
}
