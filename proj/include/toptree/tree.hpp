#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "toptree/alphabet.hpp"

namespace toptree {

/// Node address: the sequence of 1-based child directions from the root.
using Position = std::vector<unsigned>;

/// A finite ranked tree (term). Children are stored by value; a Tree is an
/// immutable value once built.
class Tree {
public:
    Tree(SymbolId label, std::vector<Tree> children = {})
        : label_(label), children_(std::move(children)) {}

    SymbolId label() const noexcept { return label_; }
    const std::vector<Tree>& children() const noexcept { return children_; }
    const Tree& child(unsigned direction) const { return children_.at(direction - 1); }
    bool is_leaf() const noexcept { return children_.empty(); }

    std::size_t node_count() const;
    std::size_t height() const;
    /// Labels in preorder; together with the ranks it determines the tree.
    std::vector<SymbolId> preorder() const;
    /// Subtree at `pos`; throws std::out_of_range when pos is not in dom(t).
    const Tree& at(const Position& pos) const;

    friend bool operator==(const Tree&, const Tree&) = default;
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

private:
    SymbolId label_;
    std::vector<Tree> children_;
};

/// Enumeration order: node count first, then preorder label ids.
bool enumeration_less(const Tree& a, const Tree& b);

/// Throws AlphabetMismatch if some node's child count differs from its rank
/// or a label is not in the alphabet.
void check_rank_consistent(const Tree& t, const RankedAlphabet& alphabet);

/// Grammar: tree := sym | sym '(' tree (',' tree)* ')'. Whitespace is
/// allowed between tokens. Errors carry the 0-based offset.
Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet);
std::string print_tree(const Tree& t, const RankedAlphabet& alphabet);

std::vector<Position> dom(const Tree& t);
/// Leaves, left to right.
std::vector<Position> frontier(const Tree& t);
/// {u1 | u in fr(t)}, left to right.
std::vector<Position> outer_frontier(const Tree& t);
std::string position_string(const Position& p);

/// All rank-consistent trees with at most `max_nodes` nodes, ordered by
/// `enumeration_less`.
std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, std::size_t max_nodes);
/// Same, but exactly `nodes` nodes.
std::vector<Tree> enumerate_trees_exact(const RankedAlphabet& alphabet, std::size_t nodes);

}  // namespace toptree
