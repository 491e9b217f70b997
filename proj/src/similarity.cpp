#include "bigdeg/similarity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bigdeg {

namespace {

/// Diagram for one fixed height-monotone labeling of the nodes.
SimilarityDiagram build_diagram(const std::vector<CodeSeq>& nodes,
                                const std::set<CodeSeq>& in_a,
                                SimilarityFlavor flavor) {
    const int m = static_cast<int>(nodes.size());
    SimilarityDiagram d;
    d.flavor = flavor;
    d.m = m;
    d.parent.assign(m, -1);
    d.height_rank.assign(m, 0);
    d.coding_flag.assign(m, 0);
    d.lex_rank.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        if (i > 0)
            d.height_rank[i] =
                d.height_rank[i - 1] + (nodes[i].size() > nodes[i - 1].size() ? 1 : 0);
        d.coding_flag[i] = in_a.count(nodes[i]) ? 1 : 0;
        for (int j = 0; j < m; ++j) {
            if (nodes[j].size() >= nodes[i].size() || j == i) continue;
            if (!std::equal(nodes[j].begin(), nodes[j].end(), nodes[i].begin())) continue;
            if (d.parent[i] < 0 || nodes[j].size() > nodes[d.parent[i]].size())
                d.parent[i] = j;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (d.parent[i] < 0) continue;
        const std::size_t at = nodes[d.parent[i]].size();
        std::set<Code> digits;
        for (int j = 0; j < m; ++j)
            if (d.parent[j] == d.parent[i]) digits.insert(nodes[j][at]);
        d.lex_rank[i] = static_cast<int>(
            std::distance(digits.begin(), digits.find(nodes[i][at])));
    }
    if (flavor == SimilarityFlavor::passing_numbers) {
        d.passing.assign(m, std::vector<int>(m, -1));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (nodes[j].size() < nodes[i].size())
                    d.passing[i][j] = nodes[i][nodes[j].size()];
    }
    return d;
}

std::vector<int> ancestors(const SimilarityDiagram& d, int x) {
    std::vector<int> out;
    while (x >= 0) {
        out.push_back(x);
        x = d.parent[x];
    }
    return out;
}

bool is_ancestor(const SimilarityDiagram& d, int a, int x) {
    for (int w = x; w >= 0; w = d.parent[w])
        if (w == a) return true;
    return false;
}

}  // namespace

std::vector<int> SimilarityDiagram::flat() const {
    std::vector<int> out{static_cast<int>(flavor), m};
    out.insert(out.end(), parent.begin(), parent.end());
    out.insert(out.end(), height_rank.begin(), height_rank.end());
    for (char c : coding_flag) out.push_back(c);
    out.insert(out.end(), lex_rank.begin(), lex_rank.end());
    for (const auto& row : passing) out.insert(out.end(), row.begin(), row.end());
    return out;
}

std::string SimilarityDiagram::encode() const {
    std::ostringstream s;
    s << (flavor == SimilarityFlavor::lex_only ? 'L' : 'P');
    for (int v : flat()) s << ',' << v;
    return s.str();
}

bool diagram_less(const SimilarityDiagram& a, const SimilarityDiagram& b) {
    return a.flat() < b.flat();
}

SimilarityDiagram canonical_form(const std::vector<CodeSeq>& a, SimilarityFlavor flavor) {
    if (a.empty()) throw std::domain_error("canonical_form: nonempty set required");
    std::set<CodeSeq> in_a(a.begin(), a.end());
    auto mc = meet_closure(a);
    std::sort(mc.begin(), mc.end(), [](const CodeSeq& x, const CodeSeq& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    // Minimize over relabelings of equal-length nodes.
    SimilarityDiagram best = build_diagram(mc, in_a, flavor);
    bool ties = false;
    for (std::size_t i = 0; i + 1 < mc.size(); ++i)
        if (mc[i].size() == mc[i + 1].size()) ties = true;
    if (!ties) return best;
    std::vector<std::size_t> perm(mc.size());
    for (std::size_t i = 0; i < mc.size(); ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < perm.size() && monotone; ++i)
            monotone = mc[perm[i]].size() <= mc[perm[i + 1]].size();
        if (!monotone) continue;
        std::vector<CodeSeq> relabeled;
        for (std::size_t i : perm) relabeled.push_back(mc[i]);
        SimilarityDiagram cand = build_diagram(relabeled, in_a, flavor);
        if (diagram_less(cand, best)) best = cand;
    }
    return best;
}

bool is_similar(const std::vector<CodeSeq>& a, const std::vector<CodeSeq>& b,
                SimilarityFlavor flavor) {
    return canonical_form(a, flavor) == canonical_form(b, flavor);
}

FinStructure decoded_structure(const SimilarityDiagram& diagram, const ClassSpec& spec) {
    std::vector<int> leaves;
    for (int i = 0; i < diagram.m; ++i)
        if (diagram.coding_flag[i]) leaves.push_back(i);
    FinStructure out(spec.signature(), static_cast<int>(leaves.size()));
    for (std::size_t a = 0; a < leaves.size(); ++a)
        for (std::size_t b = a + 1; b < leaves.size(); ++b) {
            const int i = leaves[a], j = leaves[b];
            if (spec.is_linear_order()) {
                // order = lex order, read off at the deepest common ancestor
                auto anc_i = ancestors(diagram, i);
                auto anc_j = ancestors(diagram, j);
                int meet = -1, bi = i, bj = j;
                for (int x : anc_i)
                    if (std::find(anc_j.begin(), anc_j.end(), x) != anc_j.end() &&
                        x > meet)
                        meet = x;
                while (diagram.parent[bi] != meet) bi = diagram.parent[bi];
                while (diagram.parent[bj] != meet) bj = diagram.parent[bj];
                if (diagram.lex_rank[bi] < diagram.lex_rank[bj])
                    out.add(0, {static_cast<int>(a), static_cast<int>(b)});
                else
                    out.add(0, {static_cast<int>(b), static_cast<int>(a)});
            } else {
                apply_code(out, static_cast<int>(a), static_cast<int>(b),
                           static_cast<Code>(diagram.passing[j][i]));
            }
        }
    return out;
}

bool TypeCatalog::contains(const SimilarityDiagram& d) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const CatalogEntry& e) { return e.diagram == d; });
}

std::vector<std::string> TypeCatalog::lines() const {
    std::vector<std::string> out;
    for (const auto& e : entries) {
        std::ostringstream s;
        s << e.diagram.encode() << " |";
        for (std::uint64_t w : e.decoded.canonical_encoding()) s << ' ' << w;
        s << " |";
        for (const auto& node : e.witness) {
            s << ' ';
            if (node.empty()) s << '.';
            for (Code c : node) s << static_cast<int>(c);
        }
        if (e.inconclusive) s << " | inconclusive";
        out.push_back(s.str());
    }
    return out;
}

namespace {

void sort_catalog(TypeCatalog& cat) {
    std::sort(cat.entries.begin(), cat.entries.end(),
              [](const CatalogEntry& x, const CatalogEntry& y) {
                  return diagram_less(x.diagram, y.diagram);
              });
}

}  // namespace

SimilarityFlavor flavor_for(const ClassSpec& spec) {
    return spec.is_linear_order() ? SimilarityFlavor::lex_only
                                  : SimilarityFlavor::passing_numbers;
}

namespace {

TypeCatalog scan_coding_nodes(const ClassSpec& spec, const FinStructure& structure,
                              const std::vector<CodeSeq>& coding, int n, int depth) {
    if (depth < n) throw std::domain_error("realized_types_in_depth: depth >= n required");
    const int top = std::min<int>(depth, static_cast<int>(coding.size()));
    const SimilarityFlavor flavor = flavor_for(spec);
    TypeCatalog cat;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == n) {
            std::vector<CodeSeq> nodes;
            for (int i : pick) nodes.push_back(coding[i]);
            if (!is_diagonal(nodes)) return;
            auto d = canonical_form(nodes, flavor);
            if (!cat.contains(d)) {
                CatalogEntry e;
                e.diagram = d;
                e.decoded = structure.restrict(pick);
                e.witness = nodes;
                cat.entries.push_back(std::move(e));
            }
            return;
        }
        for (int i = from; i < top; ++i) {
            bool ok = true;
            for (int chosen : pick)
                if (!incomparable(coding[chosen], coding[i])) ok = false;
            if (!ok) continue;
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    sort_catalog(cat);
    return cat;
}

}  // namespace

TypeCatalog realized_types_in_depth(const CodingTree& tree, int n, int depth) {
    return scan_coding_nodes(tree.spec, tree.prefix_structure, tree.coding, n, depth);
}

TypeCatalog realized_types_in_depth(const EnumeratedPrefix& prefix, int n, int depth) {
    std::vector<CodeSeq> coding;
    for (int i = 0; i < prefix.size() && i < depth; ++i)
        coding.push_back(type_of(prefix.structure, i, i));
    return scan_coding_nodes(prefix.spec, prefix.structure, coding, n, depth);
}

TypeCatalog realized_types_in_sauer(const ClassSpec& spec, int n, int depth) {
    const auto* u = spec.as_unrestricted();
    if (!u) throw std::domain_error("realized_types_in_sauer: unrestricted classes only");
    const int k = static_cast<int>(u->constraints.size());
    std::vector<CodeSeq> all{CodeSeq{}};
    for (std::size_t at = 0; at < all.size(); ++at) {
        if (static_cast<int>(all[at].size()) == depth) continue;
        for (Code c = 0; c < k; ++c) {
            all.push_back(all[at]);
            all.back().push_back(c);
        }
    }
    TypeCatalog cat;
    std::vector<CodeSeq> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == n) {
            if (!is_diagonal(pick)) return;
            auto d = canonical_form(pick, SimilarityFlavor::passing_numbers);
            if (cat.contains(d)) return;
            std::vector<CodeSeq> sorted = pick;
            std::sort(sorted.begin(), sorted.end(),
                      [](const CodeSeq& x, const CodeSeq& y) { return x.size() < y.size(); });
            CatalogEntry e;
            e.diagram = std::move(d);
            e.decoded = FinStructure(spec.signature(), n);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    FinStructure pair = sauer_relation(spec, sorted[a], sorted[b]);
                    for (std::size_t r = 0; r < pair.tuples.size(); ++r)
                        for (const auto& tup : pair.tuples[r])
                            e.decoded.add(r, {tup[0] == 0 ? a : b, tup[1] == 0 ? a : b});
                }
            e.witness = sorted;
            cat.entries.push_back(std::move(e));
            return;
        }
        for (std::size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (const auto& chosen : pick)
                if (!incomparable(chosen, all[i])) ok = false;
            if (!ok) continue;
            pick.push_back(all[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    sort_catalog(cat);
    return cat;
}

namespace {

/// Parent arrays of full binary trees on 2n-1 height-ranked nodes
/// (children unordered, parent rank below child rank).
std::vector<std::vector<int>> full_binary_parent_arrays(int n) {
    const int m = 2 * n - 1;
    std::vector<std::vector<int>> out;
    std::vector<int> parent(m, -1), kids(m, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            for (int x = 0; x < m; ++x)
                if (kids[x] == 1) return;
            out.push_back(parent);
            return;
        }
        for (int p = 0; p < i; ++p) {
            if (kids[p] == 2) continue;
            parent[i] = p;
            ++kids[p];
            self(self, i + 1);
            --kids[p];
        }
    };
    if (m == 1)
        out.push_back(parent);
    else
        rec(rec, 1);
    return out;
}

}  // namespace

std::vector<Code> allowed_codes(const ClassSpec& spec) {
    std::vector<Code> out;
    const int alphabet = code_alphabet_size(spec.signature());
    if (const auto* u = spec.as_unrestricted()) {
        FinStructure probe(spec.signature(), 2);
        for (Code c = 0; c < alphabet; ++c) {
            FinStructure pat = probe;
            apply_code(pat, 0, 1, c);
            if (std::any_of(u->constraints.begin(), u->constraints.end(),
                            [&](const FinStructure& k) { return is_isomorphic(pat, k); }))
                out.push_back(c);
        }
        return out;
    }
    for (Code c = 0; c < alphabet; ++c) out.push_back(c);
    return out;
}

namespace {

/// Enumeration of m vertices whose coding node c_r is exactly node r of the
/// diagram, for diagrams with one node per level produced by the generator.
FinStructure witness_enumeration(const ClassSpec& spec, const SimilarityDiagram& d) {
    const int m = d.m;
    FinStructure s(spec.signature(), m);
    if (spec.is_linear_order()) {
        // interval splitting: each node owns a gap of the growing order;
        // inserting v_r into node r's gap makes that node the 1-type of v_r,
        // and the two subgaps go to r's children in lex order
        std::vector<std::vector<int>> children(m);
        for (int i = 1; i < m; ++i) children[d.parent[i]].push_back(i);
        std::vector<int> gap(m, -1);
        gap[0] = 0;
        std::vector<int> seq;  // vertex ids in ascending order
        for (int r = 0; r < m; ++r) {
            const int p = gap[r];
            for (int x = r + 1; x < m; ++x)
                if (gap[x] > p) ++gap[x];
            seq.insert(seq.begin() + p, r);
            for (int c : children[r]) gap[c] = d.lex_rank[c] == 0 ? p : p + 1;
        }
        std::vector<int> pos(m);
        for (int at = 0; at < m; ++at) pos[seq[at]] = at;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (pos[i] < pos[j]) s.add(0, {i, j});
        return s;
    }
    // passing flavor: node r's digit at level j is passing[r][j], so that is
    // the pattern of v_r toward v_j
    for (int r = 1; r < m; ++r)
        for (int j = 0; j < r; ++j)
            apply_code(s, j, r, static_cast<Code>(d.passing[r][j]));
    return s;
}

}  // namespace

EnumeratedPrefix reference_prefix(const ClassSpec& spec, int n) {
    if (spec.is_linear_order()) {
        // rank pattern found by exhaustive search: its coding nodes realize
        // all 16 triple types by depth 11, which is optimal — no order on
        // 10 vertices reaches more than 15
        static constexpr int ranks[11] = {4, 1, 9, 10, 7, 2, 5, 0, 8, 3, 6};
        FinStructure s(spec.signature(), n);
        auto key = [&](int i) { return i < 11 ? ranks[i] : i; };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (key(i) < key(j)) s.add(0, {i, j});
        return prefix_from_structure(spec, s);
    }
    if (spec.as_unrestricted()) {
        // pattern toward v_i = the i-th digit of the vertex index, so every
        // small pattern combination appears early
        const std::vector<Code> codes = allowed_codes(spec);
        const int k = static_cast<int>(codes.size());
        FinStructure s(spec.signature(), n);
        for (int j = 0; j < n; ++j) {
            int rest = j;
            for (int i = 0; i < j; ++i) {
                apply_code(s, i, j, codes[rest % k]);
                rest /= k;
            }
        }
        return prefix_from_structure(spec, s);
    }
    if (const auto* forb = spec.as_forb();
        forb && forb->forbidden.size() == 1 &&
        is_isomorphic(forb->forbidden[0], complete_graph(3))) {
        // hand-built triangle-free enumeration realizing both edge types
        // (the coding nodes of pairs (3,4) and (4,5) diverge in opposite
        // directions); extended by a path, which stays triangle-free
        static constexpr std::pair<int, int> edges[] = {
            {0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {4, 5},
            {1, 6}, {4, 6}, {0, 7}, {7, 8}, {2, 8}, {8, 9}};
        FinStructure s(spec.signature(), n);
        for (auto [a, b] : edges)
            if (a < n && b < n) s.add(0, {a, b});
        for (int i = 10; i < n; ++i) s.add(0, {i - 1, i});
        return prefix_from_structure(spec, s);
    }
    return build_prefix(spec, n);
}

TypeCatalog enumerate_types(const ClassSpec& spec, const FinStructure& target, int depth) {
    if (spec.as_forb())
        throw std::domain_error("enumerate_types: forbidden-substructure classes unsupported");
    if (!class_member(target, spec))
        throw std::domain_error("enumerate_types: target outside the class");
    const int n = target.size;
    if (n < 1) throw std::domain_error("enumerate_types: nonempty target required");
    if (depth < 0) depth = 4 * n;
    const SimilarityFlavor flavor = flavor_for(spec);
    const int m = 2 * n - 1;

    std::vector<SimilarityDiagram> generated;
    for (const auto& parent : full_binary_parent_arrays(n)) {
        SimilarityDiagram base;
        base.flavor = flavor;
        base.m = m;
        base.parent = parent;
        base.height_rank.resize(m);
        for (int i = 0; i < m; ++i) base.height_rank[i] = i;
        base.coding_flag.assign(m, 1);
        std::vector<std::vector<int>> children(m);
        for (int i = 1; i < m; ++i) {
            children[parent[i]].push_back(i);
            base.coding_flag[parent[i]] = 0;
        }
        base.lex_rank.assign(m, 0);

        if (flavor == SimilarityFlavor::lex_only) {
            // one bit per internal node: which child subtree is lex-least
            std::vector<int> internals;
            for (int i = 0; i < m; ++i)
                if (!children[i].empty()) internals.push_back(i);
            for (int mask = 0; mask < (1 << internals.size()); ++mask) {
                SimilarityDiagram d = base;
                for (std::size_t w = 0; w < internals.size(); ++w) {
                    int lo = children[internals[w]][0], hi = children[internals[w]][1];
                    d.lex_rank[lo] = (mask >> w) & 1;
                    d.lex_rank[hi] = 1 - d.lex_rank[lo];
                }
                generated.push_back(std::move(d));
            }
            continue;
        }

        // passing flavor: assign distinct digits to the two subtrees at each
        // internal node, one free digit per class (w, j) with j incomparable
        // to w and parent(w) < j < w.
        const std::vector<Code> codes = allowed_codes(spec);
        const int k = static_cast<int>(codes.size());
        std::vector<int> internals;
        for (int i = 0; i < m; ++i)
            if (!children[i].empty()) internals.push_back(i);
        std::vector<std::pair<int, int>> free_slots;  // (w, j)
        for (int w = 1; w < m; ++w)
            for (int j = parent[w] + 1; j < w; ++j) {
                bool j_anc = false;
                for (int x = w; x >= 0; x = parent[x])
                    if (x == j) j_anc = true;
                if (!j_anc) free_slots.emplace_back(w, j);
            }
        const int digit_choices = k * (k - 1);
        std::vector<int> digit_pick(internals.size(), 0), free_pick(free_slots.size(), 0);
        auto emit = [&]() {
            SimilarityDiagram d = base;
            std::vector<Code> branch_digit(m, 0);
            for (std::size_t w = 0; w < internals.size(); ++w) {
                int a = digit_pick[w] / (k - 1), b = digit_pick[w] % (k - 1);
                if (b >= a) ++b;  // distinct pair (codes[a], codes[b])
                branch_digit[children[internals[w]][0]] = codes[a];
                branch_digit[children[internals[w]][1]] = codes[b];
                int lo = children[internals[w]][0], hi = children[internals[w]][1];
                d.lex_rank[lo] = branch_digit[lo] < branch_digit[hi] ? 0 : 1;
                d.lex_rank[hi] = 1 - d.lex_rank[lo];
            }
            std::map<std::pair<int, int>, Code> free_value;
            for (std::size_t s = 0; s < free_slots.size(); ++s)
                free_value[free_slots[s]] = codes[free_pick[s]];
            d.passing.assign(m, std::vector<int>(m, -1));
            for (int i = 1; i < m; ++i)
                for (int j = 0; j < i; ++j) {
                    if (is_ancestor(d, j, i)) {
                        int c = i;
                        while (d.parent[c] != j) c = d.parent[c];
                        d.passing[i][j] = branch_digit[c];
                    } else {
                        int w = i;
                        while (d.parent[w] > j) w = d.parent[w];
                        d.passing[i][j] = free_value.at({w, j});
                    }
                }
            generated.push_back(std::move(d));
        };
        auto odometer = [&](auto&& self, std::size_t pos) -> void {
            if (pos == internals.size() + free_slots.size()) {
                emit();
                return;
            }
            if (pos < internals.size()) {
                for (int v = 0; v < digit_choices; ++v) {
                    digit_pick[pos] = v;
                    self(self, pos + 1);
                }
            } else {
                for (int v = 0; v < k; ++v) {
                    free_pick[pos - internals.size()] = v;
                    self(self, pos + 1);
                }
            }
        };
        odometer(odometer, 0);
    }

    // keep diagrams decoding to the target
    TypeCatalog cat;
    for (auto& d : generated) {
        FinStructure decoded = decoded_structure(d, spec);
        if (!is_isomorphic(decoded, target)) continue;
        if (cat.contains(d)) continue;
        CatalogEntry e;
        e.diagram = std::move(d);
        e.decoded = std::move(decoded);
        e.inconclusive = true;
        cat.entries.push_back(std::move(e));
    }

    // every generated diagram is witnessed by a purpose-built enumeration in
    // which its nodes appear as the coding nodes at levels 0..2n-2
    for (auto& e : cat.entries) {
        auto p = prefix_from_structure(spec, witness_enumeration(spec, e.diagram));
        std::vector<CodeSeq> nodes;
        for (int r = 0; r < m; ++r)
            if (e.diagram.coding_flag[r]) nodes.push_back(type_of(p.structure, r, r));
        if (canonical_form(nodes, flavor) != e.diagram)
            throw std::logic_error("enumerate_types: constructed witness mismatch");
        e.witness = std::move(nodes);
        e.inconclusive = false;
    }

    // independent cross-check: every type realized over the reference
    // enumeration must already be generated
    auto realized = realized_types_in_depth(reference_prefix(spec, depth), n, depth);
    for (const auto& r : realized.entries) {
        if (!is_isomorphic(r.decoded, target)) continue;
        if (!cat.contains(r.diagram))
            throw std::logic_error("enumerate_types: realized diagram missing from generation");
    }
    sort_catalog(cat);
    return cat;
}

}  // namespace bigdeg
