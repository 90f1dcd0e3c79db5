#include "toptree/path_word.hpp"

#include <cctype>

#include "toptree/error.hpp"

namespace toptree {

bool is_valid_path(const PathWord& w, const RankedAlphabet& alphabet) {
    const auto& ls = w.letters;
    if (ls.empty() || ls.size() % 2 == 0)
        return false;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (ls[i] >= alphabet.num_letters())
            return false;
        if (i % 2 == 0) {
            if (alphabet.is_direction(ls[i]))
                return false;
        } else {
            if (!alphabet.is_direction(ls[i]) || alphabet.direction_of(ls[i]) > alphabet.rank(ls[i - 1]))
                return false;
        }
    }
    return alphabet.rank(ls.back()) == 0;
}

namespace {

bool all_digits(std::string_view s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return !s.empty();
}

Letter token_letter(std::string_view tok, const RankedAlphabet& alphabet, std::size_t offset) {
    if (all_digits(tok)) {
        const auto d = std::stoul(std::string(tok));
        if (d < 1 || d > alphabet.max_rank())
            throw ParseError("direction " + std::string(tok) + " out of range at offset " + std::to_string(offset),
                             offset);
        return alphabet.direction_letter(static_cast<unsigned>(d));
    }
    if (auto id = alphabet.find(tok))
        return alphabet.symbol_letter(*id);
    throw ParseError("unknown path token '" + std::string(tok) + "' at offset " + std::to_string(offset), offset);
}

}  // namespace

PathWord parse_path_word(std::string_view text, const RankedAlphabet& alphabet) {
    std::vector<std::pair<std::size_t, std::string_view>> tokens;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const auto start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        tokens.emplace_back(start, text.substr(start, i - start));
    }
    PathWord w;
    // A lone multi-character token that is not a symbol is read compactly.
    if (tokens.size() == 1 && tokens[0].second.size() > 1 && !alphabet.find(tokens[0].second) &&
        alphabet.single_char_names()) {
        const auto [start, tok] = tokens[0];
        for (std::size_t j = 0; j < tok.size(); ++j)
            w.letters.push_back(token_letter(tok.substr(j, 1), alphabet, start + j));
        return w;
    }
    for (const auto& [start, tok] : tokens)
        w.letters.push_back(token_letter(tok, alphabet, start));
    return w;
}

std::string print_path_word(const PathWord& w, const RankedAlphabet& alphabet, bool compact) {
    compact = compact && alphabet.single_char_names() && alphabet.max_rank() < 10;
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i > 0 && !compact)
            out += ' ';
        out += alphabet.letter_name(w.letters[i]);
    }
    return out;
}

namespace {
void collect_paths(const Tree& t, const RankedAlphabet& alphabet, PathWord& prefix, std::vector<PathWord>& out) {
    prefix.letters.push_back(alphabet.symbol_letter(t.label()));
    if (t.is_leaf()) {
        out.push_back(prefix);
    } else {
        for (unsigned d = 1; d <= t.children().size(); ++d) {
            prefix.letters.push_back(alphabet.direction_letter(d));
            collect_paths(t.child(d), alphabet, prefix, out);
            prefix.letters.pop_back();
        }
    }
    prefix.letters.pop_back();
}
}  // namespace

std::vector<PathWord> pot_tree(const Tree& t, const RankedAlphabet& alphabet) {
    check_rank_consistent(t, alphabet);
    std::vector<PathWord> out;
    PathWord prefix;
    collect_paths(t, alphabet, prefix, out);
    return out;
}

}  // namespace toptree
