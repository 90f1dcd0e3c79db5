#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "toptree/bottom_up.hpp"
#include "toptree/path_automaton.hpp"
#include "toptree/top_down.hpp"

namespace toptree {

// Automaton files are line oriented. '#' starts a comment; a line starting
// with '@' opens a section, and anything after the section keyword on the
// same line belongs to that section. Every file has @kind and @alphabet.
//
//   buta      @states? @accept @trans   ("c -> q", "a(q1,...,qi) -> q")
//   dtda      @states? @initial @accept @trans   ("q a -> q1 ... qi")
//   dtdaset   @states? @initial @accept-sets ("{q1 q2} {}") @trans
//   fcheck    dtda core sections plus @check-states? @check-initial
//             @check-accept @check-trans ("p q -> p'", q a core state)
//   pathnfa   @states? @initial @accept @trans ("p TOKEN -> q")
//   pathdfa   as pathnfa, deterministic; missing moves go to a sink
//
// Top-down files with missing transitions are completed by a sink state
// named "sink" (or "sink1", ... when taken).

enum class AutomatonKind { Buta, Dtda, DtdaSet, FCheck, PathNfa, PathDfa };

using AnyAutomaton = std::variant<BottomUpTA, Dtda, DtdaSet, FrontierCheckDtda, PathAutomaton>;

struct AutomatonFile {
    AutomatonKind kind;
    AnyAutomaton automaton;
};

std::string kind_name(AutomatonKind kind);
AutomatonKind parse_kind(std::string_view name);

AutomatonFile parse_automaton(std::string_view text);
AutomatonFile read_automaton_file(const std::filesystem::path& path);
RankedAlphabet read_alphabet_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

std::string write_automaton(const BottomUpTA& a);
std::string write_automaton(const Dtda& a);
std::string write_automaton(const DtdaSet& a);
std::string write_automaton(const FrontierCheckDtda& a);
/// Written as pathdfa when deterministic and complete, else pathnfa.
std::string write_automaton(const PathAutomaton& a);
std::string write_automaton(const AnyAutomaton& a);

}  // namespace toptree
