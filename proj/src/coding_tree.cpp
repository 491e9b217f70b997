#include "bigdeg/coding_tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bigdeg {

CodeSeq meet(const CodeSeq& s, const CodeSeq& t) {
    std::size_t n = 0;
    while (n < s.size() && n < t.size() && s[n] == t[n]) ++n;
    return CodeSeq(s.begin(), s.begin() + n);
}

bool incomparable(const CodeSeq& s, const CodeSeq& t) {
    return meet(s, t).size() < std::min(s.size(), t.size());
}

LexOrder lex_compare(const CodeSeq& s, const CodeSeq& t) {
    if (!incomparable(s, t))
        throw std::domain_error("lex_compare: inputs are tree-comparable");
    std::size_t m = meet(s, t).size();
    return s[m] < t[m] ? LexOrder::less : LexOrder::greater;
}

Code passing_number(const CodeSeq& t, const CodeSeq& s) {
    if (s.size() >= t.size())
        throw std::domain_error("passing_number: |s| < |t| required");
    return t[s.size()];
}

std::vector<CodeSeq> meet_closure(std::vector<CodeSeq> s) {
    std::set<CodeSeq> out(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) out.insert(meet(s[i], s[j]));
    return {out.begin(), out.end()};
}

bool is_diagonal(const std::vector<CodeSeq>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!incomparable(s[i], s[j]))
                throw std::domain_error("is_diagonal: input is not an antichain");
    auto mc = meet_closure(s);
    std::set<std::size_t> lengths;
    for (const auto& node : mc)
        if (!lengths.insert(node.size()).second) return false;
    return true;
}

bool CodingTree::contains(const CodeSeq& node) const {
    if (node.size() >= levels.size()) return false;
    const auto& lvl = levels[node.size()];
    return std::binary_search(lvl.begin(), lvl.end(), node);
}

std::vector<CodeSeq> CodingTree::successors(const CodeSeq& node) const {
    std::vector<CodeSeq> out;
    if (node.size() + 1 >= levels.size()) return out;
    for (const auto& child : levels[node.size() + 1])
        if (std::equal(node.begin(), node.end(), child.begin())) out.push_back(child);
    return out;
}

int CodingTree::node_count() const {
    int n = 0;
    for (const auto& lvl : levels) n += static_cast<int>(lvl.size());
    return n;
}

CodingTree build_coding_tree(const EnumeratedPrefix& prefix, int depth) {
    if (depth > prefix.size())
        throw std::domain_error("build_coding_tree: depth exceeds prefix size");
    CodingTree tree;
    tree.spec = prefix.spec;
    tree.prefix_structure = prefix.structure;
    tree.depth = depth;
    tree.levels.assign(depth + 1, {});
    tree.levels[0] = {CodeSeq{}};
    const int alphabet = code_alphabet_size(prefix.spec.signature());
    std::vector<int> front;
    for (int l = 0; l < depth; ++l) {
        front.push_back(l);
        FinStructure k = prefix.structure.restrict(front);
        for (const auto& node : tree.levels[l])
            for (Code c = 0; c < alphabet; ++c) {
                CodeSeq child = node;
                child.push_back(c);
                if (type_realizable(k, child, prefix.spec))
                    tree.levels[l + 1].push_back(child);
            }
        std::sort(tree.levels[l + 1].begin(), tree.levels[l + 1].end());
    }
    for (int n = 0; n <= depth && n < prefix.size(); ++n) {
        tree.coding.push_back(type_of(prefix.structure, n, n));
        if (!tree.contains(tree.coding.back()))
            throw std::logic_error("build_coding_tree: coding node not realizable");
    }
    return tree;
}

std::string dump_tree(const CodingTree& tree) {
    std::ostringstream out;
    for (std::size_t l = 0; l < tree.levels.size(); ++l)
        for (const auto& node : tree.levels[l]) {
            int parent = -1;
            if (l > 0) {
                CodeSeq p(node.begin(), node.end() - 1);
                const auto& prev = tree.levels[l - 1];
                parent = static_cast<int>(
                    std::lower_bound(prev.begin(), prev.end(), p) - prev.begin());
            }
            int last = node.empty() ? -1 : static_cast<int>(node.back());
            int coding = -1;
            for (std::size_t n = 0; n < tree.coding.size(); ++n)
                if (tree.coding[n] == node) coding = static_cast<int>(n);
            out << l << ' ' << parent << ' ' << last << ' ' << coding << '\n';
        }
    return out.str();
}

FinStructure sauer_relation(const ClassSpec& spec, const CodeSeq& s, const CodeSeq& t) {
    const auto* u = spec.as_unrestricted();
    if (!u) throw std::domain_error("sauer_relation: unrestricted classes only");
    if (s == t) throw std::domain_error("sauer_relation: distinct nodes required");
    if (s.size() > t.size()) {
        // Orientation is fixed by length: shorter node plays vertex 0.
        FinStructure rev = sauer_relation(spec, t, s);
        FinStructure out(rev.signature, 2);
        for (std::size_t r = 0; r < rev.tuples.size(); ++r)
            for (const auto& tup : rev.tuples[r]) out.add(r, {1 - tup[0], 1 - tup[1]});
        return out;
    }
    if (s.size() < t.size()) return u->constraints.at(t[s.size()]);
    FinStructure base = u->constraints.at(0);
    if (lex_compare(s, t) == LexOrder::less) return base;
    FinStructure out(base.signature, 2);
    for (std::size_t r = 0; r < base.tuples.size(); ++r)
        for (const auto& tup : base.tuples[r]) out.add(r, {1 - tup[0], 1 - tup[1]});
    return out;
}

SauerUniverse sauer_universe(const ClassSpec& spec, int depth) {
    const auto* u = spec.as_unrestricted();
    if (!u) throw std::domain_error("sauer_universe: unrestricted classes only");
    const int k = static_cast<int>(u->constraints.size());
    SauerUniverse universe;
    std::vector<CodeSeq> level{CodeSeq{}};
    for (int l = 0; l <= depth; ++l) {
        universe.nodes.insert(universe.nodes.end(), level.begin(), level.end());
        std::vector<CodeSeq> next;
        for (const auto& node : level)
            for (Code c = 0; c < k; ++c) {
                next.push_back(node);
                next.back().push_back(c);
            }
        level = std::move(next);
    }
    const int n = static_cast<int>(universe.nodes.size());
    universe.structure = FinStructure(spec.signature(), n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            FinStructure pair =
                sauer_relation(spec, universe.nodes[i], universe.nodes[j]);
            // pair's vertex 0 is the shorter (or lex-lesser) node
            bool i_first = universe.nodes[i].size() < universe.nodes[j].size() ||
                           (universe.nodes[i].size() == universe.nodes[j].size() &&
                            lex_compare(universe.nodes[i], universe.nodes[j]) ==
                                LexOrder::less);
            if (!i_first) continue;
            for (std::size_t r = 0; r < pair.tuples.size(); ++r)
                for (const auto& tup : pair.tuples[r])
                    universe.structure.add(r, {tup[0] == 0 ? i : j, tup[1] == 0 ? i : j});
        }
    return universe;
}

bool is_strong_subtree(const TreeSubset& t, const TreeSubset& s) {
    std::set<CodeSeq> t_nodes(t.nodes.begin(), t.nodes.end());
    std::set<int> t_levels(t.level_set.begin(), t.level_set.end());
    for (const auto& node : s.nodes)
        if (!t_nodes.count(node)) return false;
    for (int l : s.level_set)
        if (!t_levels.count(l)) return false;
    if (s.level_set.empty()) return true;
    const int s_max = *std::max_element(s.level_set.begin(), s.level_set.end());
    for (const auto& node : s.nodes) {
        const int len = static_cast<int>(node.size());
        if (len >= s_max) continue;
        // least T-level strictly above this node
        int next = -1;
        for (int l : t_levels)
            if (l > len && (next < 0 || l < next)) next = l;
        if (next < 0) continue;
        std::set<CodeSeq> succ;
        for (const auto& u : t.nodes)
            if (static_cast<int>(u.size()) >= next &&
                std::equal(node.begin(), node.end(), u.begin()))
                succ.insert(CodeSeq(u.begin(), u.begin() + next));
        for (const auto& dir : succ) {
            bool covered = std::any_of(s.nodes.begin(), s.nodes.end(), [&](const CodeSeq& x) {
                return x.size() >= dir.size() &&
                       std::equal(dir.begin(), dir.end(), x.begin());
            });
            if (!covered) return false;
        }
    }
    return true;
}

}  // namespace bigdeg
