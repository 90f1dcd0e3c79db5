#include "toptree/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "toptree/error.hpp"

namespace toptree {

bool is_identifier(std::string_view s) {
    if (s.empty() || s.find("->") != std::string_view::npos)
        return false;
    bool all_digits = true;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '_' && c != '\'' && c != '.' && c != '+' && c != '-')
            return false;
        if (!std::isdigit(u))
            all_digits = false;
    }
    return !all_digits;
}

RankedAlphabet::RankedAlphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (SymbolId id = 0; id < symbols_.size(); ++id) {
        const auto& s = symbols_[id];
        if (!is_identifier(s.name))
            throw ParseError("invalid symbol name '" + s.name + "'", 0);
        if (!index_.emplace(s.name, id).second)
            throw ParseError("duplicate symbol '" + s.name + "'", 0);
        max_rank_ = std::max(max_rank_, s.rank);
    }
}

RankedAlphabet RankedAlphabet::parse(std::string_view text) {
    std::vector<Symbol> symbols;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        ++line_no;
        auto eol = text.find('\n', offset);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto line = text.substr(offset, eol - offset);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        std::string entry;
        while (in >> entry) {
            const auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected name:rank, got '" + entry + "'", offset, line_no);
            const auto rank_text = entry.substr(colon + 1);
            if (rank_text.empty() || !std::all_of(rank_text.begin(), rank_text.end(),
                                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("invalid rank in '" + entry + "'", offset, line_no);
            auto name = entry.substr(0, colon);
            if (!is_identifier(name))
                throw ParseError("invalid symbol name '" + name + "'", offset, line_no);
            symbols.push_back({std::move(name), static_cast<unsigned>(std::stoul(rank_text))});
        }
        offset = eol + 1;
    }
    try {
        return RankedAlphabet(std::move(symbols));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), 0, 0);
    }
}

std::optional<SymbolId> RankedAlphabet::find(std::string_view name) const {
    if (auto it = index_.find(name); it != index_.end())
        return it->second;
    return std::nullopt;
}

std::vector<SymbolId> RankedAlphabet::symbols_of_rank(unsigned rank) const {
    std::vector<SymbolId> out;
    for (SymbolId id = 0; id < symbols_.size(); ++id)
        if (symbols_[id].rank == rank)
            out.push_back(id);
    return out;
}

bool RankedAlphabet::has_constants() const {
    return std::any_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.rank == 0; });
}

bool RankedAlphabet::single_char_names() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.name.size() == 1; });
}

Letter RankedAlphabet::direction_letter(unsigned direction) const {
    if (direction < 1 || direction > max_rank_)
        throw PreconditionError("direction " + std::to_string(direction) + " out of range");
    return static_cast<Letter>(symbols_.size() + direction - 1);
}

std::string RankedAlphabet::letter_name(Letter l) const {
    if (is_direction(l))
        return std::to_string(direction_of(l));
    return name(l);
}

std::string RankedAlphabet::to_string() const {
    std::string out;
    for (const auto& s : symbols_) {
        if (!out.empty())
            out += ' ';
        out += s.name + ':' + std::to_string(s.rank);
    }
    return out;
}

void require_same_alphabet(const RankedAlphabet& a, const RankedAlphabet& b, std::string_view what) {
    if (!(a == b))
        throw AlphabetMismatch(std::string(what) + ": alphabets differ ([" + a.to_string() + "] vs [" +
                               b.to_string() + "])");
}

}  // namespace toptree
