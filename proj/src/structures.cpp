#include "bigdeg/structures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bigdeg {

Signature graph_signature() {
    return Signature{{RelationSymbol{"E", 2, true}}};
}

Signature linear_order_signature() {
    return Signature{{RelationSymbol{"<", 2, false}}};
}

FinStructure::FinStructure(Signature sig, int n)
    : signature(std::move(sig)), size(n), tuples(signature.relations.size()) {}

bool FinStructure::has(int rel, const Tuple& t) const {
    return tuples[rel].count(t) > 0;
}

void FinStructure::add(int rel, Tuple t) {
    const auto& sym = signature.relations[rel];
    if (sym.symmetric && t.size() == 2) {
        tuples[rel].insert(Tuple{t[1], t[0]});
    }
    tuples[rel].insert(std::move(t));
}

FinStructure FinStructure::restrict(const std::vector<int>& vertices) const {
    FinStructure out(signature, static_cast<int>(vertices.size()));
    std::vector<int> back(size, -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) back[vertices[i]] = i;
    for (std::size_t r = 0; r < tuples.size(); ++r) {
        for (const auto& t : tuples[r]) {
            Tuple mapped;
            bool inside = true;
            for (int v : t) {
                if (back[v] < 0) { inside = false; break; }
                mapped.push_back(back[v]);
            }
            if (inside) out.tuples[r].insert(std::move(mapped));
        }
    }
    return out;
}

std::vector<std::uint64_t> FinStructure::encode() const {
    std::vector<std::uint64_t> out;
    out.push_back(static_cast<std::uint64_t>(size));
    std::uint64_t word = 0;
    int bits = 0;
    auto push_bit = [&](bool b) {
        word = (word << 1) | (b ? 1u : 0u);
        if (++bits == 64) { out.push_back(word); word = 0; bits = 0; }
    };
    for (std::size_t r = 0; r < tuples.size(); ++r) {
        if (signature.relations[r].arity == 1) {
            for (int i = 0; i < size; ++i) push_bit(has(r, {i}));
        } else {
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) push_bit(has(r, {i, j}));
        }
    }
    if (bits > 0) out.push_back(word << (64 - bits));
    return out;
}

std::vector<std::uint64_t> FinStructure::canonical_encoding() const {
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> best = encode();
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto cand = restrict(perm).encode();
        if (cand < best) best = std::move(cand);
    }
    return best;
}

bool FinStructure::valid() const {
    if (tuples.size() != signature.relations.size()) return false;
    for (std::size_t r = 0; r < tuples.size(); ++r) {
        const auto& sym = signature.relations[r];
        for (const auto& t : tuples[r]) {
            if (static_cast<int>(t.size()) != sym.arity) return false;
            for (int v : t)
                if (v < 0 || v >= size) return false;
            if (sym.symmetric && sym.arity == 2 && !has(r, {t[1], t[0]})) return false;
        }
    }
    return true;
}

FinStructure empty_graph(int n) { return FinStructure(graph_signature(), n); }

FinStructure complete_graph(int n) {
    FinStructure g(graph_signature(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add(0, {i, j});
    return g;
}

FinStructure path_graph(int n) {
    FinStructure g(graph_signature(), n);
    for (int i = 0; i + 1 < n; ++i) g.add(0, {i, i + 1});
    return g;
}

FinStructure cycle_graph(int n) {
    FinStructure g = path_graph(n);
    if (n > 2) g.add(0, {n - 1, 0});
    return g;
}

FinStructure chain(int n) {
    FinStructure g(linear_order_signature(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add(0, {i, j});
    return g;
}

bool is_embedding(const FinStructure& a, const FinStructure& b, const EmbeddingMap& m) {
    if (a.signature != b.signature) throw std::invalid_argument("is_embedding: signature mismatch");
    if (m.domain_size != a.size || m.codomain_size != b.size ||
        static_cast<int>(m.image.size()) != a.size)
        return false;
    std::vector<bool> used(b.size, false);
    for (int v : m.image) {
        if (v < 0 || v >= b.size || used[v]) return false;
        used[v] = true;
    }
    for (std::size_t r = 0; r < a.tuples.size(); ++r) {
        const int arity = a.signature.relations[r].arity;
        if (arity == 1) {
            for (int i = 0; i < a.size; ++i)
                if (a.has(r, {i}) != b.has(r, {m.image[i]})) return false;
        } else {
            for (int i = 0; i < a.size; ++i)
                for (int j = 0; j < a.size; ++j)
                    if (a.has(r, {i, j}) != b.has(r, {m.image[i], m.image[j]})) return false;
        }
    }
    return true;
}

namespace {

// Partial consistency: the map so far (positions 0..k) preserves and
// reflects all relations among mapped vertices.
bool partial_ok(const FinStructure& a, const FinStructure& b,
                const std::vector<int>& img, int k) {
    for (std::size_t r = 0; r < a.tuples.size(); ++r) {
        const int arity = a.signature.relations[r].arity;
        if (arity == 1) {
            if (a.has(r, {k}) != b.has(r, {img[k]})) return false;
        } else {
            for (int i = 0; i <= k; ++i) {
                if (a.has(r, {i, k}) != b.has(r, {img[i], img[k]})) return false;
                if (a.has(r, {k, i}) != b.has(r, {img[k], img[i]})) return false;
            }
        }
    }
    return true;
}

void search_embeddings(const FinStructure& a, const FinStructure& b,
                       std::vector<int>& img, std::vector<bool>& used, int k,
                       std::vector<EmbeddingMap>& out) {
    if (k == a.size) {
        out.push_back(EmbeddingMap{a.size, b.size, img});
        return;
    }
    for (int v = 0; v < b.size; ++v) {
        if (used[v]) continue;
        img[k] = v;
        if (partial_ok(a, b, img, k)) {
            used[v] = true;
            search_embeddings(a, b, img, used, k + 1, out);
            used[v] = false;
        }
    }
}

bool search_one_embedding(const FinStructure& a, const FinStructure& b,
                          std::vector<int>& img, std::vector<bool>& used, int k) {
    if (k == a.size) return true;
    for (int v = 0; v < b.size; ++v) {
        if (used[v]) continue;
        img[k] = v;
        if (partial_ok(a, b, img, k)) {
            used[v] = true;
            if (search_one_embedding(a, b, img, used, k + 1)) return true;
            used[v] = false;
        }
    }
    return false;
}

}  // namespace

std::vector<EmbeddingMap> embeddings(const FinStructure& a, const FinStructure& b) {
    if (a.signature != b.signature) throw std::invalid_argument("embeddings: signature mismatch");
    std::vector<EmbeddingMap> out;
    std::vector<int> img(a.size, -1);
    std::vector<bool> used(b.size, false);
    search_embeddings(a, b, img, used, 0, out);
    return out;
}

bool embeds(const FinStructure& a, const FinStructure& b) {
    if (a.signature != b.signature) throw std::invalid_argument("embeds: signature mismatch");
    std::vector<int> img(a.size, -1);
    std::vector<bool> used(b.size, false);
    return search_one_embedding(a, b, img, used, 0);
}

bool is_isomorphic(const FinStructure& a, const FinStructure& b) {
    if (a.signature != b.signature) throw std::invalid_argument("is_isomorphic: signature mismatch");
    if (a.size != b.size) return false;
    return a.canonical_encoding() == b.canonical_encoding();
}

Signature ClassSpec::signature() const {
    if (std::holds_alternative<LinearOrderClass>(variant)) return linear_order_signature();
    if (const auto* u = std::get_if<UnrestrictedBinaryClass>(&variant))
        return u->constraints.at(0).signature;
    const auto& f = std::get<ForbClass>(variant);
    return f.forbidden.at(0).signature;
}

bool ClassSpec::is_linear_order() const {
    return std::holds_alternative<LinearOrderClass>(variant);
}

const UnrestrictedBinaryClass* ClassSpec::as_unrestricted() const {
    return std::get_if<UnrestrictedBinaryClass>(&variant);
}

const ForbClass* ClassSpec::as_forb() const {
    return std::get_if<ForbClass>(&variant);
}

ClassSpec linear_order_class() {
    return ClassSpec{LinearOrderClass{}, "linear-order"};
}

ClassSpec rado_graph_class() {
    FinStructure non_edge(graph_signature(), 2);
    FinStructure edge(graph_signature(), 2);
    edge.add(0, {0, 1});
    return ClassSpec{UnrestrictedBinaryClass{{non_edge, edge}}, "rado"};
}

ClassSpec triangle_free_class() {
    return ClassSpec{ForbClass{{complete_graph(3)}}, "triangle-free"};
}

bool class_spec_valid(const ClassSpec& spec, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (const auto* u = spec.as_unrestricted()) {
        if (u->constraints.empty()) return fail("constraint set is empty");
        for (const auto& c : u->constraints) {
            if (c.size != 2) return fail("constraint is not a 2-vertex structure");
            if (c.signature != spec.signature()) return fail("constraint signature mismatch");
        }
        // Isomorphism-closure over the 2-vertex universe.
        for (const auto& pat : all_two_vertex_structures(spec.signature())) {
            bool any = false, all = true;
            for (const auto& q : all_two_vertex_structures(spec.signature())) {
                if (!is_isomorphic(pat, q)) continue;
                bool in = std::any_of(u->constraints.begin(), u->constraints.end(),
                                      [&](const FinStructure& c) { return c == q; });
                any = any || in;
                all = all && in;
            }
            if (any != all) return fail("constraint set not closed under isomorphism");
        }
    } else if (const auto* f = spec.as_forb()) {
        for (const auto& s : f->forbidden) {
            if (s.signature != spec.signature()) return fail("forbidden signature mismatch");
            for (int i = 0; i < s.size; ++i)
                for (int j = i + 1; j < s.size; ++j) {
                    bool related = false;
                    for (std::size_t r = 0; r < s.tuples.size(); ++r) {
                        if (s.signature.relations[r].arity != 2) continue;
                        if (s.has(r, {i, j}) || s.has(r, {j, i})) related = true;
                    }
                    if (!related) return fail("forbidden structure not irreducible");
                }
        }
    }
    return true;
}

namespace {

bool is_linear_order_structure(const FinStructure& a) {
    if (a.signature.relations.size() != 1 || a.signature.relations[0].arity != 2) return false;
    for (int i = 0; i < a.size; ++i) {
        if (a.has(0, {i, i})) return false;
        for (int j = 0; j < a.size; ++j) {
            if (i == j) continue;
            if (a.has(0, {i, j}) == a.has(0, {j, i})) return false;  // totality + antisymmetry
            for (int k = 0; k < a.size; ++k)
                if (a.has(0, {i, j}) && a.has(0, {j, k}) && !a.has(0, {i, k})) return false;
        }
    }
    return true;
}

}  // namespace

bool class_member(const FinStructure& a, const ClassSpec& spec) {
    if (a.signature != spec.signature())
        throw std::invalid_argument("class_member: signature mismatch");
    if (spec.is_linear_order()) return is_linear_order_structure(a);
    if (const auto* u = spec.as_unrestricted()) {
        for (int i = 0; i < a.size; ++i)
            for (int j = i + 1; j < a.size; ++j) {
                FinStructure pair = a.restrict({i, j});
                bool ok = std::any_of(
                    u->constraints.begin(), u->constraints.end(),
                    [&](const FinStructure& c) { return is_isomorphic(pair, c); });
                if (!ok) return false;
            }
        return true;
    }
    const auto& f = std::get<ForbClass>(spec.variant);
    for (const auto& bad : f.forbidden)
        if (embeds(bad, a)) return false;
    return true;
}

std::vector<FinStructure> all_two_vertex_structures(const Signature& sig) {
    // Enumerate every way to relate two vertices, smallest encoding first.
    std::vector<FinStructure> out{FinStructure(sig, 2)};
    for (std::size_t r = 0; r < sig.relations.size(); ++r) {
        const auto& sym = sig.relations[r];
        std::vector<std::vector<Tuple>> choices;
        if (sym.arity == 1) {
            choices = {{}, {{0}}, {{1}}, {{0}, {1}}};
        } else if (sym.symmetric) {
            choices = {{}, {{0, 1}}};
        } else {
            choices = {{}, {{0, 1}}, {{1, 0}}, {{0, 1}, {1, 0}}};
        }
        std::vector<FinStructure> next;
        for (const auto& base : out)
            for (const auto& ch : choices) {
                FinStructure s = base;
                for (const auto& t : ch) s.add(static_cast<int>(r), t);
                next.push_back(std::move(s));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const FinStructure& x, const FinStructure& y) {
        return x.encode() < y.encode();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FinStructure> all_members_of_size(const ClassSpec& spec, int n) {
    const Signature sig = spec.signature();
    for (const auto& r : sig.relations)
        if (r.arity != 2)
            throw std::invalid_argument("all_members_of_size: binary signatures only");
    std::vector<FinStructure> out;
    const auto patterns = all_two_vertex_structures(sig);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::size_t> pick(pairs.size(), 0);
    while (true) {
        FinStructure s(sig, n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto& pat = patterns[pick[p]];
            auto [i, j] = pairs[p];
            for (std::size_t r = 0; r < pat.tuples.size(); ++r)
                for (const auto& t : pat.tuples[r]) {
                    Tuple mapped;
                    for (int v : t) mapped.push_back(v == 0 ? i : j);
                    s.tuples[r].insert(std::move(mapped));
                }
        }
        if (class_member(s, spec)) out.push_back(std::move(s));
        std::size_t p = 0;
        for (; p < pick.size(); ++p) {
            if (++pick[p] < patterns.size()) break;
            pick[p] = 0;
        }
        if (p == pick.size()) break;
        if (pairs.empty()) break;
    }
    return out;
}

std::vector<FinStructure> age(const FinStructure& universe, int max_size) {
    std::vector<FinStructure> out;
    std::set<std::vector<std::uint64_t>> seen;
    for (int k = 1; k <= max_size && k <= universe.size; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            FinStructure sub = universe.restrict(idx);
            auto key = sub.canonical_encoding();
            if (seen.insert(key).second) out.push_back(std::move(sub));
            int p = k - 1;
            while (p >= 0 && idx[p] == universe.size - k + p) --p;
            if (p < 0) break;
            ++idx[p];
            for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end(), [](const FinStructure& x, const FinStructure& y) {
        return x.canonical_encoding() < y.canonical_encoding();
    });
    return out;
}

std::vector<FinStructure> one_vertex_extensions(const FinStructure& x, const ClassSpec& spec) {
    const Signature sig = x.signature;
    const auto patterns = all_two_vertex_structures(sig);
    const int n = x.size;
    std::vector<FinStructure> out;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        FinStructure y(sig, n + 1);
        for (std::size_t r = 0; r < y.tuples.size(); ++r)
            y.tuples[r] = x.tuples[r];
        for (int i = 0; i < n; ++i) {
            const auto& pat = patterns[pick[i]];
            for (std::size_t r = 0; r < pat.tuples.size(); ++r)
                for (const auto& t : pat.tuples[r]) {
                    Tuple mapped;
                    for (int v : t) mapped.push_back(v == 0 ? i : n);
                    y.tuples[r].insert(std::move(mapped));
                }
        }
        if (class_member(y, spec)) out.push_back(std::move(y));
        int i = 0;
        for (; i < n; ++i) {
            if (++pick[i] < patterns.size()) break;
            pick[i] = 0;
        }
        if (i == n) break;
        if (n == 0) break;
    }
    return out;
}

namespace {

// All ways to fill the unrelated cross pairs of a glued universe with
// 2-vertex patterns; `free_pairs` holds (x, y) vertex pairs of d.
void fill_free_pairs(FinStructure d, const std::vector<std::pair<int, int>>& free_pairs,
                     const std::vector<FinStructure>& patterns, std::size_t at,
                     const std::function<bool(const FinStructure&)>& accept, bool& done) {
    if (done) return;
    if (at == free_pairs.size()) {
        done = accept(d);
        return;
    }
    auto [x, y] = free_pairs[at];
    for (const auto& pat : patterns) {
        FinStructure next = d;
        for (std::size_t r = 0; r < pat.tuples.size(); ++r)
            for (const auto& t : pat.tuples[r]) {
                Tuple mapped;
                for (int v : t) mapped.push_back(v == 0 ? x : y);
                next.tuples[r].insert(std::move(mapped));
            }
        fill_free_pairs(std::move(next), free_pairs, patterns, at + 1, accept, done);
        if (done) return;
    }
}

}  // namespace

AmalgamationResult check_amalgamation_bounded(const ClassSpec& spec,
                                              const AmalgamationInstance& inst,
                                              int bound,
                                              AmalgamationMode mode) {
    if (!class_member(inst.a, spec) || !class_member(inst.b, spec) ||
        !class_member(inst.c, spec))
        throw std::domain_error("check_amalgamation_bounded: instance not in class");
    if (!is_embedding(inst.a, inst.b, inst.f) || !is_embedding(inst.a, inst.c, inst.g))
        throw std::domain_error("check_amalgamation_bounded: invalid embeddings");

    const Signature sig = spec.signature();
    const auto patterns = all_two_vertex_structures(sig);
    const int nb = inst.b.size, nc = inst.c.size, na = inst.a.size;

    std::vector<int> c_from_a(nc, -1);  // c-vertex -> a-vertex when in g[A]
    for (int i = 0; i < na; ++i) c_from_a[inst.g.image[i]] = i;
    std::vector<int> c_free;
    for (int v = 0; v < nc; ++v)
        if (c_from_a[v] < 0) c_free.push_back(v);
    std::vector<int> b_free;
    {
        std::vector<bool> in_fa(nb, false);
        for (int v : inst.f.image) in_fa[v] = true;
        for (int v = 0; v < nb; ++v)
            if (!in_fa[v]) b_free.push_back(v);
    }

    AmalgamationResult result;
    result.bound = bound;

    // Any witness restricts to the glued universe (the class is
    // hereditary), so only identifications between B\f[A] and C\g[A]
    // and relations on unmatched cross pairs need enumerating.
    std::vector<int> match(c_free.size(), -1);  // index into b_free, or -1
    const bool allow_identification = (mode == AmalgamationMode::AP);

    auto try_current_matching = [&]() -> bool {
        // Build candidate D: vertices of B keep their labels; unmatched
        // free C-vertices get fresh labels.
        std::vector<int> s_img(nc, -1);
        int d_size = nb;
        for (int i = 0; i < na; ++i) s_img[inst.g.image[i]] = inst.f.image[i];
        for (std::size_t i = 0; i < c_free.size(); ++i)
            s_img[c_free[i]] = match[i] >= 0 ? b_free[match[i]] : d_size++;
        if (d_size > bound) return false;

        FinStructure d(sig, d_size);
        for (std::size_t r = 0; r < d.tuples.size(); ++r) {
            for (const auto& t : inst.b.tuples[r]) d.tuples[r].insert(t);
            for (const auto& t : inst.c.tuples[r]) {
                Tuple mapped;
                for (int v : t) mapped.push_back(s_img[v]);
                d.tuples[r].insert(std::move(mapped));
            }
        }

        std::vector<std::pair<int, int>> free_pairs;
        std::vector<bool> from_b(d_size, false), from_c(d_size, false);
        for (int v = 0; v < nb; ++v) from_b[v] = true;
        for (int v : s_img) from_c[v] = true;
        for (int x = 0; x < d_size; ++x)
            for (int y = x + 1; y < d_size; ++y)
                if (!(from_b[x] && from_b[y]) && !(from_c[x] && from_c[y]))
                    free_pairs.emplace_back(x, y);

        EmbeddingMap r_map{nb, d_size, {}};
        r_map.image.resize(nb);
        std::iota(r_map.image.begin(), r_map.image.end(), 0);
        EmbeddingMap s_map{nc, d_size, s_img};

        std::function<bool(const FinStructure&)> accept = [&](const FinStructure& cand) {
            if (!cand.valid() || !class_member(cand, spec)) return false;
            if (!is_embedding(inst.b, cand, r_map)) return false;
            if (!is_embedding(inst.c, cand, s_map)) return false;
            result.witness = AmalgamationWitness{cand, r_map, s_map};
            return true;
        };

        bool done = false;
        if (mode == AmalgamationMode::FAP) {
            // Free amalgam: no relations beyond those inherited.
            done = accept(d);
        } else {
            fill_free_pairs(d, free_pairs, patterns, 0, accept, done);
        }
        return done;
    };

    // First try no identification, then each legal identification for
    // the free C-vertices (AP only; SAP/FAP demand disjoint images).
    std::function<bool(std::size_t)> step = [&](std::size_t at) -> bool {
        if (at == c_free.size()) return try_current_matching();
        match[at] = -1;
        if (step(at + 1)) return true;
        if (allow_identification) {
            for (std::size_t b_i = 0; b_i < b_free.size(); ++b_i) {
                bool taken = false;
                for (std::size_t j = 0; j < at; ++j)
                    if (match[j] == static_cast<int>(b_i)) taken = true;
                if (taken) continue;
                match[at] = static_cast<int>(b_i);
                if (step(at + 1)) return true;
            }
            match[at] = -1;
        }
        return false;
    };

    step(0);
    return result;
}

namespace {

// Extensions of `base` by the structure pattern `ext` sits in: all class
// members on base.size+2 vertices restricting to `base` on the front and
// carrying prescribed relations among {A, v', w'}; relations between the
// vertices of base \ A and {v', w'} range freely.
std::vector<FinStructure> disjoint_amalgams(const FinStructure& a_prime,
                                            const FinStructure& c,
                                            int na,
                                            const ClassSpec& spec) {
    const Signature sig = a_prime.signature;
    const auto patterns = all_two_vertex_structures(sig);
    const int np = a_prime.size;
    const int v_new = np, w_new = np + 1;  // v', w' in C'
    const int v_old = na, w_old = na + 1;  // v, w in C

    FinStructure base(sig, np + 2);
    for (std::size_t r = 0; r < base.tuples.size(); ++r) {
        base.tuples[r] = a_prime.tuples[r];
        for (const auto& t : c.tuples[r]) {
            Tuple mapped;
            bool keep = true;
            for (int v : t) {
                if (v < na) mapped.push_back(v);
                else if (v == v_old) mapped.push_back(v_new);
                else if (v == w_old) mapped.push_back(w_new);
                else keep = false;
            }
            if (keep) base.tuples[r].insert(std::move(mapped));
        }
    }

    std::vector<std::pair<int, int>> free_pairs;
    for (int x = na; x < np; ++x) {
        free_pairs.emplace_back(x, v_new);
        free_pairs.emplace_back(x, w_new);
    }

    std::vector<FinStructure> out;
    std::function<bool(const FinStructure&)> accept = [&](const FinStructure& cand) {
        if (class_member(cand, spec)) out.push_back(cand);
        return false;  // keep enumerating
    };
    bool done = false;
    fill_free_pairs(base, free_pairs, patterns, 0, accept, done);
    return out;
}

// All class members of size <= bound extending `root` as an initial segment.
std::vector<FinStructure> extensions_up_to(const FinStructure& root,
                                           const ClassSpec& spec, int bound) {
    std::vector<FinStructure> out;
    std::vector<FinStructure> frontier{root};
    while (!frontier.empty()) {
        std::vector<FinStructure> next;
        for (const auto& s : frontier) {
            if (s.size <= bound) out.push_back(s);
            if (s.size < bound)
                for (auto& e : one_vertex_extensions(s, spec)) next.push_back(std::move(e));
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

SdapResult check_sdap_bounded(const ClassSpec& spec,
                              const FinStructure& a,
                              const FinStructure& c,
                              int bound) {
    const int na = a.size;
    if (c.size != na + 2) throw std::domain_error("check_sdap_bounded: |C| must be |A|+2");
    {
        std::vector<int> front(na);
        std::iota(front.begin(), front.end(), 0);
        if (c.restrict(front) != a)
            throw std::domain_error("check_sdap_bounded: A must be the initial substructure of C");
    }
    if (!class_member(a, spec) || !class_member(c, spec))
        throw std::domain_error("check_sdap_bounded: instance not in class");

    const Signature sig = c.signature;
    const auto patterns = all_two_vertex_structures(sig);

    // Policy: |A'| <= |A| + 2.
    std::vector<FinStructure> a_primes{a};
    for (const auto& e1 : one_vertex_extensions(a, spec)) {
        a_primes.push_back(e1);
        for (const auto& e2 : one_vertex_extensions(e1, spec)) a_primes.push_back(e2);
    }
    std::stable_sort(a_primes.begin(), a_primes.end(),
                     [](const FinStructure& x, const FinStructure& y) { return x.size < y.size; });

    SdapResult result;
    result.kind = SdapResult::Kind::Inconclusive;
    result.bound = bound;

    for (const auto& a_prime : a_primes) {
        for (const auto& c_prime : disjoint_amalgams(a_prime, c, na, spec)) {
            const int np = a_prime.size;
            std::vector<int> front(np);
            std::iota(front.begin(), front.end(), 0);
            std::vector<int> with_v = front, with_w = front;
            with_v.push_back(np);
            with_w.push_back(np + 1);
            const FinStructure type_v = c_prime.restrict(with_v);  // A' + v'
            const FinStructure type_w = c_prime.restrict(with_w);  // A' + w'

            bool candidate_ok = true;
            for (const auto& b : extensions_up_to(a_prime, spec, bound)) {
                std::vector<FinStructure> sigmas, taus;
                std::vector<int> keep(np);
                std::iota(keep.begin(), keep.end(), 0);
                std::vector<int> keep_new = keep;
                keep_new.push_back(b.size);
                for (const auto& d : one_vertex_extensions(b, spec)) {
                    const FinStructure over_ap = d.restrict(keep_new);
                    if (over_ap == type_v) sigmas.push_back(d);
                    if (over_ap == type_w) taus.push_back(d);
                }
                for (const auto& d : sigmas) {
                    for (const auto& tau : taus) {
                        // Look for E = D + w'' with type(w''/B) = tau and the
                        // natural map A u {v'', w''} -> C an isomorphism.
                        const int v2 = b.size, w2 = b.size + 1;
                        bool found_e = false;
                        for (const auto& pat : patterns) {
                            FinStructure e(sig, b.size + 2);
                            for (std::size_t r = 0; r < e.tuples.size(); ++r) {
                                e.tuples[r] = d.tuples[r];
                                for (const auto& t : tau.tuples[r]) {
                                    Tuple mapped;
                                    for (int v : t) mapped.push_back(v == b.size ? w2 : v);
                                    e.tuples[r].insert(std::move(mapped));
                                }
                                for (const auto& t : pat.tuples[r]) {
                                    Tuple mapped;
                                    for (int v : t) mapped.push_back(v == 0 ? v2 : w2);
                                    e.tuples[r].insert(std::move(mapped));
                                }
                            }
                            if (!class_member(e, spec)) continue;
                            std::vector<int> target(na);
                            std::iota(target.begin(), target.end(), 0);
                            target.push_back(v2);
                            target.push_back(w2);
                            if (e.restrict(target) == c) { found_e = true; break; }
                        }
                        if (!found_e) {
                            candidate_ok = false;
                            if (!result.failing_b) {
                                result.failing_b = b;
                                result.failing_d = d;
                            }
                            break;
                        }
                    }
                    if (!candidate_ok) break;
                }
                if (!candidate_ok) break;
            }
            if (candidate_ok) {
                result.kind = SdapResult::Kind::VerifiedUpTo;
                result.a_prime = a_prime;
                result.c_prime = c_prime;
                result.failing_b.reset();
                result.failing_d.reset();
                return result;
            }
        }
    }
    return result;
}

}  // namespace bigdeg
