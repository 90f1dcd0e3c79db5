#include "toptree/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "toptree/error.hpp"

namespace toptree {

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (auto c = a.label_ <=> b.label_; c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.children_.begin(), a.children_.end(), b.children_.begin(),
                                                  b.children_.end());
}

std::size_t Tree::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children_)
        n += c.node_count();
    return n;
}

std::size_t Tree::height() const {
    std::size_t h = 0;
    for (const auto& c : children_)
        h = std::max(h, c.height() + 1);
    return h;
}

namespace {
void collect_preorder(const Tree& t, std::vector<SymbolId>& out) {
    out.push_back(t.label());
    for (const auto& c : t.children())
        collect_preorder(c, out);
}
}  // namespace

std::vector<SymbolId> Tree::preorder() const {
    std::vector<SymbolId> out;
    collect_preorder(*this, out);
    return out;
}

const Tree& Tree::at(const Position& pos) const {
    const Tree* cur = this;
    for (unsigned d : pos) {
        if (d < 1 || d > cur->children_.size())
            throw std::out_of_range("position " + position_string(pos) + " not in dom(t)");
        cur = &cur->children_[d - 1];
    }
    return *cur;
}

bool enumeration_less(const Tree& a, const Tree& b) {
    const auto na = a.node_count(), nb = b.node_count();
    if (na != nb)
        return na < nb;
    return a.preorder() < b.preorder();
}

void check_rank_consistent(const Tree& t, const RankedAlphabet& alphabet) {
    if (t.label() >= alphabet.size())
        throw AlphabetMismatch("tree label id " + std::to_string(t.label()) + " not in alphabet");
    if (t.children().size() != alphabet.rank(t.label()))
        throw AlphabetMismatch("symbol '" + alphabet.name(t.label()) + "' has rank " +
                               std::to_string(alphabet.rank(t.label())) + " but " +
                               std::to_string(t.children().size()) + " children");
    for (const auto& c : t.children())
        check_rank_consistent(c, alphabet);
}

namespace {

class TreeParser {
public:
    TreeParser(std::string_view text, const RankedAlphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    Tree parse() {
        Tree t = parse_node();
        skip_ws();
        if (pos_ != text_.size())
            fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("tree syntax error at offset " + std::to_string(pos_) + ": " + msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '+' ||
               c == '-';
    }

    Tree parse_node() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_]))
            ++pos_;
        if (start == pos_)
            fail("expected symbol");
        const auto name = text_.substr(start, pos_ - start);
        const auto id = alphabet_.find(name);
        if (!id) {
            pos_ = start;
            fail("unknown symbol '" + std::string(name) + "'");
        }
        const unsigned rank = alphabet_.rank(*id);
        std::vector<Tree> children;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            children.push_back(parse_node());
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                children.push_back(parse_node());
                skip_ws();
            }
            if (pos_ >= text_.size() || text_[pos_] != ')')
                fail("expected ',' or ')'");
            ++pos_;
        }
        if (children.size() != rank) {
            throw ParseError("arity mismatch at offset " + std::to_string(start) + ": '" + std::string(name) +
                                 "' has rank " + std::to_string(rank) + " but " + std::to_string(children.size()) +
                                 " arguments",
                             start);
        }
        return Tree(*id, std::move(children));
    }

    std::string_view text_;
    const RankedAlphabet& alphabet_;
    std::size_t pos_ = 0;
};

void print_into(const Tree& t, const RankedAlphabet& alphabet, std::string& out) {
    out += alphabet.name(t.label());
    if (t.is_leaf())
        return;
    out += '(';
    bool first = true;
    for (const auto& c : t.children()) {
        if (!first)
            out += ',';
        first = false;
        print_into(c, alphabet, out);
    }
    out += ')';
}

void collect_dom(const Tree& t, Position& cur, std::vector<Position>& out) {
    out.push_back(cur);
    for (unsigned i = 0; i < t.children().size(); ++i) {
        cur.push_back(i + 1);
        collect_dom(t.children()[i], cur, out);
        cur.pop_back();
    }
}

void collect_frontier(const Tree& t, Position& cur, std::vector<Position>& out) {
    if (t.is_leaf()) {
        out.push_back(cur);
        return;
    }
    for (unsigned i = 0; i < t.children().size(); ++i) {
        cur.push_back(i + 1);
        collect_frontier(t.children()[i], cur, out);
        cur.pop_back();
    }
}

}  // namespace

Tree parse_tree(std::string_view text, const RankedAlphabet& alphabet) {
    return TreeParser(text, alphabet).parse();
}

std::string print_tree(const Tree& t, const RankedAlphabet& alphabet) {
    std::string out;
    print_into(t, alphabet, out);
    return out;
}

std::vector<Position> dom(const Tree& t) {
    std::vector<Position> out;
    Position cur;
    collect_dom(t, cur, out);
    return out;
}

std::vector<Position> frontier(const Tree& t) {
    std::vector<Position> out;
    Position cur;
    collect_frontier(t, cur, out);
    return out;
}

std::vector<Position> outer_frontier(const Tree& t) {
    auto out = frontier(t);
    for (auto& p : out)
        p.push_back(1);
    return out;
}

std::string position_string(const Position& p) {
    if (p.empty())
        return "e";
    std::string s;
    for (unsigned d : p)
        s += std::to_string(d);
    return s;
}

namespace {

// by_size[n] holds every tree with exactly n nodes, unsorted.
void fill_exact(const RankedAlphabet& alphabet, std::size_t nodes, std::vector<std::vector<Tree>>& by_size) {
    while (by_size.size() <= nodes) {
        const std::size_t n = by_size.size();
        std::vector<Tree> level;
        for (SymbolId a = 0; a < alphabet.size(); ++a) {
            const unsigned k = alphabet.rank(a);
            if (k == 0) {
                if (n == 1)
                    level.emplace_back(a);
                continue;
            }
            if (n < 1 + k)
                continue;
            auto emit_products = [&](const std::vector<std::size_t>& sz) {
                std::vector<std::size_t> idx(k, 0);
                for (unsigned j = 0; j < k; ++j)
                    if (by_size[sz[j]].empty())
                        return;
                while (true) {
                    std::vector<Tree> kids;
                    kids.reserve(k);
                    for (unsigned j = 0; j < k; ++j)
                        kids.push_back(by_size[sz[j]][idx[j]]);
                    level.emplace_back(a, std::move(kids));
                    unsigned j = k;
                    while (j > 0) {
                        --j;
                        if (++idx[j] < by_size[sz[j]].size())
                            break;
                        idx[j] = 0;
                        if (j == 0)
                            return;
                    }
                }
            };
            // Enumerate compositions of n-1 into k positive parts.
            std::vector<std::size_t> comp(k, 1);
            std::size_t rest = n - 1 - k;
            std::function<void(unsigned, std::size_t)> rec = [&](unsigned j, std::size_t left) {
                if (j + 1 == k) {
                    comp[j] = 1 + left;
                    emit_products(comp);
                    return;
                }
                for (std::size_t extra = 0; extra <= left; ++extra) {
                    comp[j] = 1 + extra;
                    rec(j + 1, left - extra);
                }
            };
            rec(0, rest);
        }
        by_size.push_back(std::move(level));
    }
}

}  // namespace

std::vector<Tree> enumerate_trees_exact(const RankedAlphabet& alphabet, std::size_t nodes) {
    if (nodes == 0)
        return {};
    std::vector<std::vector<Tree>> by_size(1);
    fill_exact(alphabet, nodes, by_size);
    auto out = std::move(by_size[nodes]);
    std::sort(out.begin(), out.end(), enumeration_less);
    return out;
}

std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, std::size_t max_nodes) {
    if (max_nodes == 0)
        throw PreconditionError("enumerate_trees: max_nodes must be at least 1");
    std::vector<std::vector<Tree>> by_size(1);
    fill_exact(alphabet, max_nodes, by_size);
    std::vector<Tree> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        auto level = by_size[n];
        std::sort(level.begin(), level.end(), enumeration_less);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

}  // namespace toptree
