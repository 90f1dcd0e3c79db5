#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toptree/alphabet.hpp"
#include "toptree/tree.hpp"

namespace toptree {

/// A labeled path a1 d1 a2 d2 ... an dn a(n+1), stored as Gamma letters.
/// Symbols and directions are distinct letters, so a symbol can never be
/// confused with a direction.
struct PathWord {
    std::vector<Letter> letters;

    friend auto operator<=>(const PathWord&, const PathWord&) = default;
    friend bool operator==(const PathWord&, const PathWord&) = default;
};

/// Checks alternation, direction bounds and the trailing constant.
bool is_valid_path(const PathWord& w, const RankedAlphabet& alphabet);

/// Whitespace-separated tokens ("a 1 b 2 d"); when every symbol name is a
/// single character the compact form "a1b2d" is accepted as well. Integers
/// are directions, identifiers are symbols. Does not require validity.
PathWord parse_path_word(std::string_view text, const RankedAlphabet& alphabet);
/// Space-separated form; `compact` joins the tokens when unambiguous.
std::string print_path_word(const PathWord& w, const RankedAlphabet& alphabet, bool compact = false);

/// pot(t): one labeled path per leaf, in left-to-right leaf order.
std::vector<PathWord> pot_tree(const Tree& t, const RankedAlphabet& alphabet);

}  // namespace toptree
