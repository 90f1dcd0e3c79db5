#include "toptree/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "toptree/error.hpp"

namespace toptree {

std::string kind_name(AutomatonKind kind) {
    switch (kind) {
    case AutomatonKind::Buta: return "buta";
    case AutomatonKind::Dtda: return "dtda";
    case AutomatonKind::DtdaSet: return "dtdaset";
    case AutomatonKind::FCheck: return "fcheck";
    case AutomatonKind::PathNfa: return "pathnfa";
    case AutomatonKind::PathDfa: return "pathdfa";
    }
    return "?";
}

AutomatonKind parse_kind(std::string_view name) {
    for (auto k : {AutomatonKind::Buta, AutomatonKind::Dtda, AutomatonKind::DtdaSet, AutomatonKind::FCheck,
                   AutomatonKind::PathNfa, AutomatonKind::PathDfa})
        if (kind_name(k) == name)
            return k;
    throw ParseError("unknown automaton kind '" + std::string(name) + "'", 0);
}

namespace {

struct Line {
    std::string text;
    std::size_t number;
};

using Sections = std::map<std::string, std::vector<Line>>;

[[noreturn]] void fail(const std::string& msg, std::size_t line) {
    throw ParseError("line " + std::to_string(line) + ": " + msg, 0, line);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string tok; in >> tok;)
        out.push_back(tok);
    return out;
}

Sections split_sections(std::string_view text) {
    Sections sections;
    std::string current;
    std::size_t number = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        ++number;
        auto eol = text.find('\n', offset);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto raw = text.substr(offset, eol - offset);
        offset = eol + 1;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto line = trim(raw);
        if (line.empty())
            continue;
        if (line[0] == '@') {
            const auto end = line.find_first_of(" \t");
            current = line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
            if (sections.count(current))
                fail("duplicate section @" + current, number);
            sections[current];
            if (end != std::string::npos) {
                auto rest = trim(line.substr(end));
                if (!rest.empty())
                    sections[current].push_back({rest, number});
            }
            continue;
        }
        if (current.empty())
            fail("content before the first section", number);
        sections[current].push_back({line, number});
    }
    return sections;
}

const std::vector<Line>& section(const Sections& s, const std::string& name, bool required) {
    static const std::vector<Line> none;
    auto it = s.find(name);
    if (it == s.end()) {
        if (required)
            throw ParseError("missing section @" + name, 0);
        return none;
    }
    return it->second;
}

void check_sections(const Sections& s, std::initializer_list<const char*> allowed) {
    for (const auto& [name, lines] : s) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return name == a; }) == allowed.end())
            throw ParseError("unexpected section @" + name, 0,
                             lines.empty() ? 0 : lines.front().number);
    }
}

// Maps state names to ids. With a declaration list, unknown names are
// errors; otherwise states are numbered by first appearance.
class StateTable {
public:
    explicit StateTable(const std::vector<Line>& declared) {
        for (const auto& l : declared)
            for (const auto& name : split_ws(l.text)) {
                if (!is_identifier(name))
                    fail("invalid state name '" + name + "'", l.number);
                if (ids_.count(name))
                    fail("duplicate state '" + name + "'", l.number);
                add(name);
            }
        closed_ = !declared.empty();
    }

    StateId get(const std::string& name, std::size_t line) {
        if (auto it = ids_.find(name); it != ids_.end())
            return it->second;
        if (closed_)
            fail("undeclared state '" + name + "'", line);
        if (!is_identifier(name))
            fail("invalid state name '" + name + "'", line);
        return add(name);
    }

    StateId add_fresh(const std::string& base) {
        std::string name = base;
        for (int i = 1; ids_.count(name); ++i)
            name = base + std::to_string(i);
        return add(name);
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    StateId add(const std::string& name) {
        const auto id = static_cast<StateId>(names_.size());
        ids_.emplace(name, id);
        names_.push_back(name);
        return id;
    }

    std::map<std::string, StateId> ids_;
    std::vector<std::string> names_;
    bool closed_ = false;
};

RankedAlphabet alphabet_of(const Sections& s) {
    std::string text;
    for (const auto& l : section(s, "alphabet", true))
        text += l.text + "\n";
    return RankedAlphabet::parse(text);
}

SymbolId symbol_of(const RankedAlphabet& sigma, const std::string& name, std::size_t line) {
    if (auto id = sigma.find(name))
        return *id;
    fail("unknown symbol '" + name + "'", line);
}

std::vector<StateId> state_list(const std::vector<Line>& lines, StateTable& table) {
    std::vector<StateId> out;
    for (const auto& l : lines)
        for (const auto& name : split_ws(l.text))
            out.push_back(table.get(name, l.number));
    return out;
}

// "lhs -> rhs" with both sides trimmed.
std::pair<std::string, std::string> split_arrow(const Line& l) {
    const auto arrow = l.text.find("->");
    if (arrow == std::string::npos)
        fail("expected '->'", l.number);
    return {trim(l.text.substr(0, arrow)), trim(l.text.substr(arrow + 2))};
}

BottomUpTA parse_buta(const Sections& s) {
    check_sections(s, {"kind", "alphabet", "states", "accept", "trans"});
    const auto sigma = alphabet_of(s);
    StateTable table(section(s, "states", false));
    std::vector<BuRule> rules;
    for (const auto& l : section(s, "trans", false)) {
        auto [lhs, rhs] = split_arrow(l);
        const auto target_tokens = split_ws(rhs);
        if (target_tokens.size() != 1)
            fail("expected a single target state", l.number);
        BuRule r{0, {}, 0};
        const auto paren = lhs.find('(');
        if (paren == std::string::npos) {
            r.symbol = symbol_of(sigma, lhs, l.number);
        } else {
            if (lhs.back() != ')')
                fail("expected ')'", l.number);
            r.symbol = symbol_of(sigma, trim(lhs.substr(0, paren)), l.number);
            std::string inner = lhs.substr(paren + 1, lhs.size() - paren - 2);
            std::stringstream ss(inner);
            for (std::string item; std::getline(ss, item, ',');) {
                auto name = trim(item);
                if (name.empty())
                    fail("empty argument state", l.number);
                r.args.push_back(table.get(name, l.number));
            }
        }
        if (r.args.size() != sigma.rank(r.symbol))
            fail("symbol '" + sigma.name(r.symbol) + "' has rank " + std::to_string(sigma.rank(r.symbol)), l.number);
        r.target = table.get(target_tokens[0], l.number);
        rules.push_back(std::move(r));
    }
    const auto finals = state_list(section(s, "accept", false), table);
    return BottomUpTA(sigma, table.size(), rules, finals, table.names());
}

struct CoreParts {
    RankedAlphabet sigma;
    StateTable table;
    StateId initial;
    std::vector<std::vector<StateId>> delta;
};

// Reads @initial and @trans; `extra` lists sections whose state names must
// be registered before completion (so the sink does not shadow them).
TopDownCore parse_core(const Sections& s, StateTable& table, const RankedAlphabet& sigma,
                       const std::vector<const std::vector<Line>*>& extra) {
    const auto& init_lines = section(s, "initial", true);
    const auto init = state_list(init_lines, table);
    if (init.size() != 1)
        throw ParseError("@initial must name exactly one state", 0, init_lines.empty() ? 0 : init_lines[0].number);
    std::map<std::pair<StateId, SymbolId>, std::vector<StateId>> moves;
    for (const auto& l : section(s, "trans", false)) {
        auto [lhs, rhs] = split_arrow(l);
        const auto left = split_ws(lhs);
        if (left.size() != 2)
            fail("expected 'state symbol -> states'", l.number);
        const auto q = table.get(left[0], l.number);
        const auto a = symbol_of(sigma, left[1], l.number);
        std::vector<StateId> targets;
        for (const auto& name : split_ws(rhs))
            targets.push_back(table.get(name, l.number));
        const std::size_t expected = std::max(1u, sigma.rank(a));
        if (targets.size() != expected)
            fail("transition for '" + left[1] + "' needs " + std::to_string(expected) + " target states", l.number);
        auto [it, fresh] = moves.emplace(std::pair{q, a}, targets);
        if (!fresh && it->second != targets)
            fail("conflicting transitions for state '" + left[0] + "' and symbol '" + left[1] + "'", l.number);
    }
    for (const auto* lines : extra)
        for (const auto& l : *lines)
            for (const auto& tok : split_ws(l.text)) {
                std::string name = tok;
                name.erase(std::remove_if(name.begin(), name.end(), [](char c) { return c == '{' || c == '}'; }),
                           name.end());
                if (!name.empty())
                    table.get(name, l.number);
            }
    const auto declared = table.size();
    bool missing = false;
    for (StateId q = 0; q < declared && !missing; ++q)
        for (SymbolId a = 0; a < sigma.size() && !missing; ++a)
            missing = !moves.count({q, a});
    std::optional<StateId> sink;
    if (missing)
        sink = table.add_fresh("sink");
    const auto n = table.size();
    std::vector<std::vector<StateId>> delta;
    for (StateId q = 0; q < n; ++q)
        for (SymbolId a = 0; a < sigma.size(); ++a) {
            auto it = moves.find({q, a});
            if (it != moves.end())
                delta.push_back(it->second);
            else
                delta.emplace_back(std::max(1u, sigma.rank(a)), *sink);
        }
    return TopDownCore(sigma, n, init[0], std::move(delta), table.names());
}

Dtda parse_dtda(const Sections& s) {
    check_sections(s, {"kind", "alphabet", "states", "initial", "accept", "trans"});
    const auto sigma = alphabet_of(s);
    StateTable table(section(s, "states", false));
    const auto& accept = section(s, "accept", false);
    auto core = parse_core(s, table, sigma, {&accept});
    return Dtda(std::move(core), state_list(accept, table));
}

DtdaSet parse_dtdaset(const Sections& s) {
    check_sections(s, {"kind", "alphabet", "states", "initial", "accept-sets", "trans"});
    const auto sigma = alphabet_of(s);
    StateTable table(section(s, "states", false));
    const auto& sets = section(s, "accept-sets", false);
    auto core = parse_core(s, table, sigma, {&sets});
    std::vector<StateSet> family;
    std::optional<StateSet> open;
    for (const auto& l : sets) {
        std::string spaced;
        for (char c : l.text) {
            if (c == '{' || c == '}')
                spaced += std::string(" ") + c + " ";
            else
                spaced += c;
        }
        for (const auto& tok : split_ws(spaced)) {
            if (tok == "{") {
                if (open)
                    fail("nested '{'", l.number);
                open.emplace();
            } else if (tok == "}") {
                if (!open)
                    fail("unmatched '}'", l.number);
                family.push_back(std::move(*open));
                open.reset();
            } else {
                if (!open)
                    fail("state outside '{...}'", l.number);
                open->push_back(table.get(tok, l.number));
            }
        }
    }
    if (open)
        throw ParseError("unterminated '{' in @accept-sets", 0);
    return DtdaSet(std::move(core), std::move(family));
}

FrontierCheckDtda parse_fcheck(const Sections& s) {
    check_sections(s, {"kind", "alphabet", "states", "initial", "trans", "check-states", "check-initial",
                       "check-accept", "check-trans"});
    const auto sigma = alphabet_of(s);
    StateTable table(section(s, "states", false));
    // Core state names used as letters by the check automaton.
    std::vector<Line> letter_lines;
    for (const auto& l : section(s, "check-trans", false)) {
        auto [lhs, rhs] = split_arrow(l);
        const auto left = split_ws(lhs);
        if (left.size() != 2)
            fail("expected 'check-state core-state -> check-state'", l.number);
        letter_lines.push_back({left[1], l.number});
    }
    auto core = parse_core(s, table, sigma, {&letter_lines});
    StateTable check(section(s, "check-states", false));
    const auto initial = state_list(section(s, "check-initial", true), check);
    std::vector<WordTransition> trans;
    for (const auto& l : section(s, "check-trans", false)) {
        auto [lhs, rhs] = split_arrow(l);
        const auto left = split_ws(lhs);
        const auto right = split_ws(rhs);
        if (right.size() != 1)
            fail("expected a single target check state", l.number);
        const auto p = check.get(left[0], l.number);
        const auto letter = table.get(left[1], l.number);
        trans.push_back({p, letter, check.get(right[0], l.number)});
    }
    const auto accept = state_list(section(s, "check-accept", false), check);
    return FrontierCheckDtda(std::move(core),
                             Nfa(table.size(), check.size(), initial, trans, accept, check.names()));
}

PathAutomaton parse_path(const Sections& s, bool deterministic) {
    check_sections(s, {"kind", "alphabet", "states", "initial", "accept", "trans"});
    const auto sigma = alphabet_of(s);
    StateTable table(section(s, "states", false));
    const auto& init_lines = section(s, "initial", true);
    const auto initial = state_list(init_lines, table);
    std::vector<WordTransition> trans;
    std::set<std::pair<StateId, Letter>> seen;
    for (const auto& l : section(s, "trans", false)) {
        auto [lhs, rhs] = split_arrow(l);
        const auto left = split_ws(lhs);
        const auto right = split_ws(rhs);
        if (left.size() != 2 || right.size() != 1)
            fail("expected 'state TOKEN -> state'", l.number);
        const auto p = table.get(left[0], l.number);
        Letter letter;
        const auto& tok = left[1];
        if (std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            const auto d = std::stoul(tok);
            if (d < 1 || d > sigma.max_rank())
                fail("direction " + tok + " out of range", l.number);
            letter = sigma.direction_letter(static_cast<unsigned>(d));
        } else {
            letter = sigma.symbol_letter(symbol_of(sigma, tok, l.number));
        }
        if (deterministic && !seen.insert({p, letter}).second)
            fail("pathdfa has two transitions for state '" + left[0] + "' and token '" + tok + "'", l.number);
        trans.push_back({p, letter, table.get(right[0], l.number)});
    }
    const auto accept = state_list(section(s, "accept", false), table);
    if (deterministic) {
        if (initial.size() != 1)
            throw ParseError("pathdfa needs exactly one initial state", 0, init_lines[0].number);
        const auto declared = table.size();
        if (seen.size() < declared * sigma.num_letters()) {
            const auto sink = table.add_fresh("sink");
            for (StateId q = 0; q <= sink; ++q)
                for (Letter l = 0; l < sigma.num_letters(); ++l)
                    if (q == sink || !seen.count({q, l}))
                        trans.push_back({q, l, sink});
        }
    }
    return PathAutomaton(sigma, Nfa(sigma.num_letters(), table.size(), initial, trans, accept, table.names()));
}

// Names as written: stored names when they are distinct identifiers,
// otherwise prefix + index.
std::vector<std::string> output_names(std::size_t n, const std::vector<std::string>& stored, const std::string& prefix) {
    bool usable = stored.size() == n;
    std::set<std::string> seen;
    for (std::size_t i = 0; usable && i < n; ++i)
        usable = is_identifier(stored[i]) && seen.insert(stored[i]).second;
    if (usable)
        return stored;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

std::string join(const std::vector<std::string>& names, const std::vector<StateId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        out += (i ? " " : "") + names[ids[i]];
    return out;
}

void write_header(std::ostringstream& out, const std::string& kind, const RankedAlphabet& sigma,
                  const std::vector<std::string>& names) {
    out << "@kind " << kind << "\n@alphabet\n" << sigma.to_string() << "\n@states\n";
    std::vector<StateId> all(names.size());
    for (StateId q = 0; q < all.size(); ++q)
        all[q] = q;
    out << join(names, all) << "\n";
}

void write_core(std::ostringstream& out, const TopDownCore& core, const std::vector<std::string>& names) {
    out << "@trans\n";
    const auto& sigma = core.alphabet();
    for (StateId q = 0; q < core.num_states(); ++q)
        for (SymbolId a = 0; a < sigma.size(); ++a) {
            const auto next = core.step(q, a);
            out << names[q] << ' ' << sigma.name(a) << " ->";
            for (auto r : next)
                out << ' ' << names[r];
            out << '\n';
        }
}

}  // namespace

AutomatonFile parse_automaton(std::string_view text) {
    const auto sections = split_sections(text);
    const auto& kind_lines = section(sections, "kind", true);
    if (kind_lines.size() != 1)
        throw ParseError("@kind must hold exactly one value", 0);
    const auto kind = parse_kind(kind_lines[0].text);
    switch (kind) {
    case AutomatonKind::Buta: return {kind, parse_buta(sections)};
    case AutomatonKind::Dtda: return {kind, parse_dtda(sections)};
    case AutomatonKind::DtdaSet: return {kind, parse_dtdaset(sections)};
    case AutomatonKind::FCheck: return {kind, parse_fcheck(sections)};
    case AutomatonKind::PathNfa: return {kind, parse_path(sections, false)};
    case AutomatonKind::PathDfa: return {kind, parse_path(sections, true)};
    }
    throw ParseError("unknown kind", 0);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AutomatonFile read_automaton_file(const std::filesystem::path& path) {
    try {
        return parse_automaton(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.position(), e.line());
    }
}

RankedAlphabet read_alphabet_file(const std::filesystem::path& path) {
    return RankedAlphabet::parse(read_text_file(path));
}

std::string write_automaton(const BottomUpTA& a) {
    const auto names = output_names(a.num_states(), a.state_names(), "q");
    std::ostringstream out;
    write_header(out, "buta", a.alphabet(), names);
    out << "@accept\n" << join(names, a.final_states()) << "\n@trans\n";
    a.for_each_rule([&](SymbolId f, std::span<const StateId> args, StateId q) {
        out << a.alphabet().name(f);
        if (!args.empty()) {
            out << '(';
            for (std::size_t i = 0; i < args.size(); ++i)
                out << (i ? "," : "") << names[args[i]];
            out << ')';
        }
        out << " -> " << names[q] << '\n';
    });
    return out.str();
}

std::string write_automaton(const Dtda& a) {
    const auto names = output_names(a.core().num_states(), a.core().state_names(), "q");
    std::ostringstream out;
    write_header(out, "dtda", a.alphabet(), names);
    out << "@initial " << names[a.core().initial()] << "\n@accept\n" << join(names, a.final_states()) << '\n';
    write_core(out, a.core(), names);
    return out.str();
}

std::string write_automaton(const DtdaSet& a) {
    const auto names = output_names(a.core().num_states(), a.core().state_names(), "q");
    std::ostringstream out;
    write_header(out, "dtdaset", a.alphabet(), names);
    out << "@initial " << names[a.core().initial()] << "\n@accept-sets\n";
    for (const auto& s : a.family())
        out << '{' << join(names, s) << "}\n";
    write_core(out, a.core(), names);
    return out.str();
}

std::string write_automaton(const FrontierCheckDtda& a) {
    const auto names = output_names(a.core().num_states(), a.core().state_names(), "q");
    const auto& b = a.check();
    const auto check_names = output_names(b.num_states(), b.state_names(), "s");
    std::ostringstream out;
    write_header(out, "fcheck", a.alphabet(), names);
    out << "@initial " << names[a.core().initial()] << '\n';
    write_core(out, a.core(), names);
    std::vector<StateId> all(b.num_states());
    for (StateId q = 0; q < all.size(); ++q)
        all[q] = q;
    out << "@check-states\n" << join(check_names, all) << "\n@check-initial " << join(check_names, b.initial())
        << "\n@check-accept\n" << join(check_names, b.accepting_states()) << "\n@check-trans\n";
    for (const auto& t : b.transitions())
        out << check_names[t.from] << ' ' << names[t.letter] << " -> " << check_names[t.to] << '\n';
    return out.str();
}

std::string write_automaton(const PathAutomaton& a) {
    const auto& b = a.nfa();
    const auto names = output_names(b.num_states(), b.state_names(), "p");
    std::ostringstream out;
    write_header(out, b.is_deterministic_complete() ? "pathdfa" : "pathnfa", a.alphabet(), names);
    out << "@initial " << join(names, b.initial()) << "\n@accept\n" << join(names, b.accepting_states())
        << "\n@trans\n";
    for (const auto& t : b.transitions())
        out << names[t.from] << ' ' << a.alphabet().letter_name(t.letter) << " -> " << names[t.to] << '\n';
    return out.str();
}

std::string write_automaton(const AnyAutomaton& a) {
    return std::visit([](const auto& x) { return write_automaton(x); }, a);
}

}  // namespace toptree
