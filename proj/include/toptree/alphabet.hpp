#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toptree {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;
/// Index of a token of the path alphabet Gamma = Sigma u {1..r}.
using Letter = std::uint32_t;

struct Symbol {
    std::string name;
    unsigned rank = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A finite ranked alphabet. Symbols keep their declaration order, which
/// fixes symbol ids and the ordering of the path alphabet: symbols first
/// (declaration order), then directions 1..max_rank.
class RankedAlphabet {
public:
    RankedAlphabet() = default;
    explicit RankedAlphabet(std::vector<Symbol> symbols);

    /// Parses "name:rank" entries separated by whitespace or newlines;
    /// '#' starts a comment that runs to the end of the line.
    static RankedAlphabet parse(std::string_view text);

    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    unsigned rank(SymbolId id) const { return symbols_.at(id).rank; }
    const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
    std::optional<SymbolId> find(std::string_view name) const;
    unsigned max_rank() const noexcept { return max_rank_; }

    std::vector<SymbolId> symbols_of_rank(unsigned rank) const;
    bool has_constants() const;
    /// True iff every symbol name is a single character (compact path words).
    bool single_char_names() const;

    // Path alphabet Gamma.
    std::size_t num_letters() const noexcept { return symbols_.size() + max_rank_; }
    Letter symbol_letter(SymbolId id) const { return id; }
    Letter direction_letter(unsigned direction) const;
    bool is_direction(Letter l) const noexcept { return l >= symbols_.size(); }
    unsigned direction_of(Letter l) const { return static_cast<unsigned>(l - symbols_.size()) + 1; }
    std::string letter_name(Letter l) const;

    std::string to_string() const;

    friend bool operator==(const RankedAlphabet& a, const RankedAlphabet& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::vector<Symbol> symbols_;
    std::map<std::string, SymbolId, std::less<>> index_;
    unsigned max_rank_ = 0;
};

/// Valid symbol/state identifier: [A-Za-z0-9_'.+-]+, not all digits.
bool is_identifier(std::string_view s);

/// Throws AlphabetMismatch unless `a == b`.
void require_same_alphabet(const RankedAlphabet& a, const RankedAlphabet& b, std::string_view what);

}  // namespace toptree
