// Command-line front end. Exit codes: 0 accept/yes, 1 reject/no, 2 error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toptree/bottom_up.hpp"
#include "toptree/error.hpp"
#include "toptree/path_bridge.hpp"
#include "toptree/report.hpp"
#include "toptree/text_format.hpp"
#include "toptree/top_down.hpp"

namespace fs = std::filesystem;
using namespace toptree;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kFailure = 2;

struct Options {
    bool structured = false;

    // run
    std::string run_file;
    std::string run_input;

    // decide
    std::string question;
    std::vector<std::string> decide_files;
    std::size_t max_atoms = kDefaultMaxAtoms;

    // convert
    std::string convert_file;
    std::string to_kind;
    std::string output;
    std::string alphabet;
    std::vector<std::string> trees;
    std::string union_with;
    std::string intersect_with;
    bool complement = false;
    bool minimize = false;

    // refute
    std::string refute_file;
    std::string target;

    // enumerate
    std::size_t max_nodes = 5;
    std::string filter;
};

void emit(const Report& r, const Options& opt) { std::cout << (opt.structured ? r.structured() : r.plain()); }

// Alphabet given as a file path, or inline as "f:2 a:0 b:0".
RankedAlphabet load_alphabet(const std::string& arg) {
    if (fs::is_regular_file(arg))
        return read_alphabet_file(arg);
    return RankedAlphabet::parse(arg);
}

// The tree language of a file, as a bottom-up automaton.
BottomUpTA tree_language(const AutomatonFile& f, const std::string& path) {
    return std::visit(
        [&](const auto& a) -> BottomUpTA {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, BottomUpTA>)
                return a;
            else if constexpr (std::is_same_v<A, Dtda>)
                return dtda_to_bottomup(a);
            else if constexpr (std::is_same_v<A, DtdaSet>)
                return set_to_bottomup(a);
            else
                throw Error(path + ": @kind " + kind_name(f.kind) + " does not describe a tree language here");
        },
        f.automaton);
}

PathAutomaton path_language(const AutomatonFile& f, const std::string& path) {
    if (const auto* p = std::get_if<PathAutomaton>(&f.automaton))
        return *p;
    throw Error(path + ": expected a pathnfa or pathdfa file");
}

void write_output(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out)
        throw Error("cannot write '" + output + "'");
    out << text;
}

int cmd_run(const Options& opt) {
    const auto file = read_automaton_file(opt.run_file);
    Report r;
    bool accepted = false;
    std::visit(
        [&](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, PathAutomaton>) {
                accepted = a.accepts(parse_path_word(opt.run_input, a.alphabet()));
                r.add("verdict", accepted ? "ACCEPT" : "REJECT");
            } else {
                const auto t = parse_tree(opt.run_input, a.alphabet());
                if constexpr (std::is_same_v<A, BottomUpTA>) {
                    if (a.is_deterministic_complete()) {
                        const auto run = run_bottomup(a, t);
                        accepted = run.accepted;
                        r.add("verdict", accepted ? "ACCEPT" : "REJECT");
                        r.add("state", a.state_name(run.state));
                    } else {
                        accepted = a.accepts(t);
                        r.add("verdict", accepted ? "ACCEPT" : "REJECT");
                    }
                } else if constexpr (std::is_same_v<A, Dtda>) {
                    accepted = accept_dtda(a, t);
                    r.add("verdict", accepted ? "ACCEPT" : "REJECT");
                    r.add("reached", format_state_set(reached_states(a.core(), t), a.core()));
                } else if constexpr (std::is_same_v<A, DtdaSet>) {
                    const auto run = accept_dtda_set(a, t);
                    accepted = run.accepted;
                    r.add("verdict", accepted ? "ACCEPT" : "REJECT");
                    r.add("reached", format_state_set(run.reached, a.core()));
                } else {
                    accepted = accept_frontier_check(a, t);
                    std::string word;
                    for (const auto& fs_state : run_dtda_states(a.core(), t))
                        word += (word.empty() ? "" : " ") + a.core().state_name(fs_state.state);
                    r.add("verdict", accepted ? "ACCEPT" : "REJECT");
                    r.add("frontier", word.empty() ? "-" : word);
                }
            }
        },
        file.automaton);
    emit(r, opt);
    return accepted ? kPositive : kNegative;
}

int cmd_decide(const Options& opt) {
    const auto& files = opt.decide_files;
    auto need = [&](std::size_t n, bool at_least) {
        if (at_least ? files.size() < n : files.size() != n)
            throw Error("decide " + opt.question + " expects " + (at_least ? "at least " : "") + std::to_string(n) +
                        " file(s)");
    };
    if (opt.question == "dtda-recognizable") {
        need(1, false);
        const auto t = tree_language(read_automaton_file(files[0]), files[0]);
        const auto v = is_dtda_recognizable(t);
        emit(recognizability_report(v, t.alphabet()), opt);
        return v.recognizable ? kPositive : kNegative;
    }
    if (opt.question == "equiv") {
        need(2, false);
        const auto a = tree_language(read_automaton_file(files[0]), files[0]);
        const auto b = tree_language(read_automaton_file(files[1]), files[1]);
        const auto e = equiv_bu(a, b);
        emit(equivalence_report(e, a.alphabet()), opt);
        return e.equivalent ? kPositive : kNegative;
    }
    if (opt.question == "empty") {
        need(1, false);
        const auto a = tree_language(read_automaton_file(files[0]), files[0]);
        const auto e = empty_bu(a);
        emit(emptiness_report(e, a.alphabet()), opt);
        return e.empty ? kPositive : kNegative;
    }
    if (opt.question == "boolcomb") {
        need(1, true);
        const auto t = tree_language(read_automaton_file(files[0]), files[0]);
        std::vector<PathAutomaton> atoms;
        for (std::size_t i = 1; i < files.size(); ++i)
            atoms.push_back(path_language(read_automaton_file(files[i]), files[i]));
        const auto res = verify_bool_combination(t, atoms, opt.max_atoms);
        emit(bool_combination_report(res, atoms.size(), t.alphabet()), opt);
        return res.formula ? kPositive : kNegative;
    }
    throw Error("unknown question '" + opt.question + "'");
}

// Writes each component next to `prefix` and returns the formula text.
std::string write_decomposition(const DtdaFormula& f, const std::string& prefix) {
    std::string text = "# components\n";
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const auto name = prefix + ".c" + std::to_string(i) + ".dtda";
        write_output(write_automaton(f.components[i]), name);
        text += "c" + std::to_string(i) + " " + fs::path(name).filename().string() + "\n";
    }
    text += "@clauses\n";
    for (const auto& clause : f.clauses) {
        std::string line;
        for (const auto& lit : clause)
            line += (line.empty() ? "" : " ") + std::string(lit.positive ? "+" : "-") + "c" +
                    std::to_string(lit.component);
        text += line + "\n";
    }
    return text;
}

std::string convert_trees(const Options& opt) {
    if (opt.alphabet.empty())
        throw Error("--tree needs --alphabet");
    const auto sigma = load_alphabet(opt.alphabet);
    std::vector<Tree> trees;
    for (const auto& s : opt.trees)
        trees.push_back(parse_tree(s, sigma));
    if (opt.to_kind == "buta") {
        auto a = from_finite_language(sigma, trees);
        return write_automaton(opt.minimize ? minimize_bu(a) : a);
    }
    if (trees.size() != 1)
        throw Error("--to " + opt.to_kind + " from trees needs exactly one --tree");
    if (opt.to_kind == "dtda")
        return write_automaton(singleton_dtda(sigma, trees[0]));
    if (opt.to_kind == "dtdaset")
        return write_automaton(singleton_dtda_set(sigma, trees[0]));
    throw Error("cannot build @kind " + opt.to_kind + " from trees");
}

std::string convert_file(const Options& opt) {
    const auto file = read_automaton_file(opt.convert_file);
    const auto to = parse_kind(opt.to_kind);
    const auto unsupported = [&] {
        return Error("conversion " + kind_name(file.kind) + " -> " + opt.to_kind + " is not supported");
    };
    if (file.kind != AutomatonKind::DtdaSet && (opt.complement || !opt.union_with.empty() || !opt.intersect_with.empty()))
        throw Error("--complement, --union and --intersect apply to dtdaset files");

    switch (file.kind) {
    case AutomatonKind::Buta: {
        const auto& a = std::get<BottomUpTA>(file.automaton);
        if (to == AutomatonKind::Buta) {
            auto d = determinize_bu(a);
            return write_automaton(opt.minimize ? minimize_bu(d) : d);
        }
        if (to == AutomatonKind::PathNfa)
            return write_automaton(pot_language(a));
        if (to == AutomatonKind::PathDfa)
            return write_automaton(minimize_dfa(pot_language(a)));
        if (to == AutomatonKind::Dtda) {
            const auto v = is_dtda_recognizable(a);
            if (!v.recognizable)
                throw Error("the language is not DTDA-recognizable; counterexample " +
                            print_tree(*v.counterexample, a.alphabet()));
            return write_automaton(v.candidate);
        }
        throw unsupported();
    }
    case AutomatonKind::Dtda: {
        const auto& a = std::get<Dtda>(file.automaton);
        if (to == AutomatonKind::DtdaSet)
            return write_automaton(dtda_to_set(a));
        if (to == AutomatonKind::Buta) {
            auto b = dtda_to_bottomup(a);
            return write_automaton(opt.minimize ? minimize_bu(b) : b);
        }
        throw unsupported();
    }
    case AutomatonKind::DtdaSet: {
        auto a = std::get<DtdaSet>(file.automaton);
        if (!opt.union_with.empty())
            a = union_set(a, std::get<DtdaSet>(read_automaton_file(opt.union_with).automaton));
        if (!opt.intersect_with.empty())
            a = intersection_set(a, std::get<DtdaSet>(read_automaton_file(opt.intersect_with).automaton));
        if (opt.complement)
            a = complement_set(a);
        if (to == AutomatonKind::DtdaSet)
            return write_automaton(a);
        if (to == AutomatonKind::Buta) {
            auto b = set_to_bottomup(a);
            return write_automaton(opt.minimize ? minimize_bu(b) : b);
        }
        throw unsupported();
    }
    case AutomatonKind::PathNfa:
    case AutomatonKind::PathDfa: {
        const auto& p = std::get<PathAutomaton>(file.automaton);
        if (to == AutomatonKind::Dtda)
            return write_automaton(tfp_dtda(opt.minimize ? minimize_dfa(p) : p));
        if (to == AutomatonKind::PathDfa)
            return write_automaton(opt.minimize ? minimize_dfa(p) : determinize_complete(p));
        throw unsupported();
    }
    case AutomatonKind::FCheck:
        throw unsupported();
    }
    throw unsupported();
}

int cmd_convert(const Options& opt) {
    if (!opt.trees.empty()) {
        if (!opt.convert_file.empty())
            throw Error("give either an input file or --tree, not both");
        write_output(convert_trees(opt), opt.output);
        return kPositive;
    }
    if (opt.convert_file.empty())
        throw Error("convert needs an input file or --tree");
    if (opt.to_kind == "boolcomb") {
        const auto file = read_automaton_file(opt.convert_file);
        const auto* a = std::get_if<DtdaSet>(&file.automaton);
        if (!a)
            throw Error("--to boolcomb needs a dtdaset file");
        if (opt.output.empty() || opt.output == "-")
            throw Error("--to boolcomb needs -o PREFIX for the component files");
        write_output(write_decomposition(decompose_set(*a), opt.output), opt.output + ".formula");
        return kPositive;
    }
    write_output(convert_file(opt), opt.output);
    return kPositive;
}

int cmd_refute(const Options& opt) {
    const auto file = read_automaton_file(opt.refute_file);
    const auto* a = std::get_if<DtdaSet>(&file.automaton);
    if (!a)
        throw Error("refute needs a dtdaset file");
    const auto target = opt.target == "t1" ? CombTarget::T1 : CombTarget::T2;
    const auto r = comb_refutation(*a, target);
    emit(refutation_report(r, target, *a), opt);
    return kPositive;
}

int cmd_enumerate(const Options& opt) {
    std::optional<AutomatonFile> filter;
    RankedAlphabet sigma(std::vector<Symbol>{});
    if (!opt.filter.empty()) {
        filter = read_automaton_file(opt.filter);
        sigma = std::visit([](const auto& a) { return a.alphabet(); }, filter->automaton);
        if (!opt.alphabet.empty())
            require_same_alphabet(sigma, load_alphabet(opt.alphabet), "enumerate");
    } else if (!opt.alphabet.empty()) {
        sigma = load_alphabet(opt.alphabet);
    } else {
        throw Error("enumerate needs --alphabet or --accepted-by");
    }
    for (const auto& t : enumerate_trees(sigma, opt.max_nodes)) {
        bool keep = true;
        if (filter)
            keep = std::visit(
                [&](const auto& a) {
                    using A = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<A, BottomUpTA>)
                        return a.accepts(t);
                    else if constexpr (std::is_same_v<A, Dtda>)
                        return accept_dtda(a, t);
                    else if constexpr (std::is_same_v<A, DtdaSet>)
                        return accept_dtda_set(a, t).accepted;
                    else if constexpr (std::is_same_v<A, FrontierCheckDtda>)
                        return accept_frontier_check(a, t);
                    else
                        return std::ranges::all_of(pot_tree(t, a.alphabet()),
                                                   [&](const PathWord& w) { return a.accepts(w); });
                },
                filter->automaton);
        if (keep)
            std::cout << print_tree(t, sigma) << '\n';
    }
    return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-down tree automata toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--structured", opt.structured, "Emit key: value lines");

    auto* run = app.add_subcommand("run", "Run an automaton on a tree (or a path word for path automata)");
    run->add_option("file", opt.run_file, "Automaton file")->required()->check(CLI::ExistingFile);
    run->add_option("input", opt.run_input, "Tree term or path word")->required();

    auto* decide = app.add_subcommand("decide", "Decide a property of tree languages");
    decide->add_option("question", opt.question, "dtda-recognizable | equiv | empty | boolcomb")
        ->required()
        ->check(CLI::IsMember({"dtda-recognizable", "equiv", "empty", "boolcomb"}));
    decide->add_option("files", opt.decide_files, "Automaton files (boolcomb: T then P_1 ... P_k)")
        ->required()
        ->check(CLI::ExistingFile);
    decide->add_option("--max-atoms", opt.max_atoms, "Largest k accepted by boolcomb");

    auto* convert = app.add_subcommand("convert", "Convert between automaton kinds");
    convert->add_option("file", opt.convert_file, "Input automaton file")->check(CLI::ExistingFile);
    convert->add_option("--to", opt.to_kind, "buta | dtda | dtdaset | pathnfa | pathdfa | boolcomb")->required();
    convert->add_option("-o,--output", opt.output, "Output file (boolcomb: prefix)");
    convert->add_option("--alphabet", opt.alphabet, "Alphabet file or inline \"f:2 a:0\" (with --tree)");
    convert->add_option("--tree", opt.trees, "Tree of a finite language (repeatable)");
    convert->add_option("--union", opt.union_with, "dtdaset to unite with")->check(CLI::ExistingFile);
    convert->add_option("--intersect", opt.intersect_with, "dtdaset to intersect with")->check(CLI::ExistingFile);
    convert->add_flag("--complement", opt.complement, "Complement a dtdaset (after --union/--intersect)");
    convert->add_flag("--minimize", opt.minimize, "Minimize the result where applicable");

    auto* refute = app.add_subcommand("refute", "Comb refutation of a dtdaset against t1 or t2");
    refute->add_option("file", opt.refute_file, "dtdaset file")->required()->check(CLI::ExistingFile);
    refute->add_option("--target", opt.target, "t1 | t2")->required()->check(CLI::IsMember({"t1", "t2"}));

    auto* enumerate = app.add_subcommand("enumerate", "List trees by size, optionally filtered by an automaton");
    enumerate->add_option("--alphabet", opt.alphabet, "Alphabet file or inline \"f:2 a:0\"");
    enumerate->add_option("--max-nodes", opt.max_nodes, "Largest node count")->check(CLI::PositiveNumber);
    enumerate->add_option("--accepted-by", opt.filter, "Keep trees accepted by this automaton")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kFailure;
    }

    try {
        if (run->parsed())
            return cmd_run(opt);
        if (decide->parsed())
            return cmd_decide(opt);
        if (convert->parsed())
            return cmd_convert(opt);
        if (refute->parsed())
            return cmd_refute(opt);
        return cmd_enumerate(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
