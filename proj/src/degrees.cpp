#include "bigdeg/degrees.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace bigdeg {

Rational TangentSeries::c(int k) const {
    if (k < 1) throw std::domain_error("TangentSeries::c: k >= 1 required");
    if (k % 2 == 0) return Rational(0);
    const std::size_t at = static_cast<std::size_t>(k / 2);
    if (at >= odd.size()) throw std::domain_error("TangentSeries::c: index beyond series");
    return odd[at];
}

TangentSeries tangent_coefficients(int M) {
    if (M < 1) throw std::domain_error("tangent_coefficients: M >= 1 required");
    // t[k] = coefficient of x^k in tan(x); the recurrence tan' = 1 + tan^2
    // gives (k+1) t[k+1] = [k = 0] + sum_{a+b=k} t[a] t[b]
    const int top = 2 * M - 1;
    std::vector<Rational> t(top + 1, Rational(0));
    for (int k = 0; k < top; ++k) {
        Rational rhs = k == 0 ? Rational(1) : Rational(0);
        for (int a = 0; a <= k; ++a) rhs += t[a] * t[k - a];
        t[k + 1] = rhs / (k + 1);
    }
    TangentSeries series;
    for (int k = 1; k <= top; k += 2) series.odd.push_back(t[k]);
    return series;
}

BigInt devlin_degree(int n) {
    if (n < 1) throw std::domain_error("devlin_degree: n >= 1 required");
    const auto series = tangent_coefficients(n);
    BigInt fact = 1;
    for (int i = 2; i <= 2 * n - 1; ++i) fact *= i;
    const Rational value = Rational(fact) * series.c(2 * n - 1);
    if (boost::multiprecision::denominator(value) != 1)
        throw std::logic_error("devlin_degree: (2n-1)! * c_{2n-1} is not integral");
    return boost::multiprecision::numerator(value);
}

DiagonalCheckResult g3_diagonal_check(const EnumeratedPrefix& prefix,
                                      const std::vector<int>& index_set) {
    if (!prefix.spec.as_forb())
        throw std::domain_error("g3_diagonal_check: forbidden-substructure prefix required");
    std::vector<int> idx = index_set;
    std::sort(idx.begin(), idx.end());
    if (std::unique(idx.begin(), idx.end()) != idx.end())
        throw std::domain_error("g3_diagonal_check: duplicate indices");
    if (!idx.empty() && (idx.front() < 0 || idx.back() >= prefix.size()))
        throw std::domain_error("g3_diagonal_check: index outside the prefix");
    const FinStructure& s = prefix.structure;
    for (std::size_t x = 0; x < idx.size(); ++x)
        for (std::size_t y = x + 1; y < idx.size(); ++y)
            if (!incomparable(type_of(s, idx[x], idx[x]), type_of(s, idx[y], idx[y])))
                throw std::domain_error("g3_diagonal_check: indices not an antichain");

    auto edge = [&](int a, int b) { return s.has(0, {a, b}); };
    DiagonalSubstructureCertificate cert;
    cert.index_set = idx;
    // (a): every member has an earlier neighbor; m_i is the least one
    for (int i : idx) {
        int m = -1;
        for (int cand = 0; cand < i; ++cand)
            if (edge(cand, i)) {
                m = cand;
                break;
            }
        if (m < 0) return ClauseViolation{'a', {i}};
        cert.earliest_neighbor[i] = m;
    }
    // (b): non-edge pairs i < j with m_j < i need a least earlier common
    // neighbor n(i,j), and it must lie outside I
    const std::set<int> in_i(idx.begin(), idx.end());
    for (std::size_t x = 0; x < idx.size(); ++x)
        for (std::size_t y = x + 1; y < idx.size(); ++y) {
            const int i = idx[x], j = idx[y];
            if (edge(i, j) || cert.earliest_neighbor[j] >= i) continue;
            int n = -1;
            for (int cand = 0; cand < i; ++cand)
                if (edge(cand, i) && edge(cand, j)) {
                    n = cand;
                    break;
                }
            if (n < 0 || in_i.count(n)) return ClauseViolation{'b', {i, j}};
            cert.common_neighbor[{i, j}] = n;
        }
    // (c): the n(i,j) are pairwise distinct
    std::map<int, std::pair<int, int>> seen;
    for (const auto& [pair, n] : cert.common_neighbor) {
        auto [it, fresh] = seen.emplace(n, pair);
        if (!fresh)
            return ClauseViolation{
                'c', {it->second.first, it->second.second, pair.first, pair.second}};
    }
    return cert;
}

namespace {

constexpr int kG3PrefixDepth = 10;  // frozen: both edge types occur by here

/// Count of similarity types among diagonal coding-node antichains of the
/// prefix that induce `target` and pass the diagonal-substructure check.
long long g3_scan_degree(const ClassSpec& spec, const FinStructure& target, int depth) {
    auto prefix = reference_prefix(spec, depth);
    std::vector<CodeSeq> coding;
    for (int i = 0; i < depth; ++i) coding.push_back(type_of(prefix.structure, i, i));
    const int n = target.size;
    std::set<std::vector<int>> diagrams;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(pick.size()) == n) {
            if (!is_isomorphic(prefix.structure.restrict(pick), target)) return;
            std::vector<CodeSeq> nodes;
            for (int i : pick) nodes.push_back(coding[i]);
            if (!is_diagonal(nodes)) return;
            if (!std::holds_alternative<DiagonalSubstructureCertificate>(
                    g3_diagonal_check(prefix, pick)))
                return;
            diagrams.insert(
                canonical_form(nodes, SimilarityFlavor::passing_numbers).flat());
            return;
        }
        for (int i = from; i < depth; ++i) {
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
    return static_cast<long long>(diagrams.size());
}

}  // namespace

DegreeResult big_ramsey_degree(const ClassSpec& spec, const FinStructure& target) {
    const int n = target.size;
    if (n < 1) return Unsupported{"empty target"};
    if (!class_member(target, spec)) return Unsupported{"target outside the class"};

    DegreeRow row;
    row.spec_id = spec.name;
    row.target = target;

    if (spec.is_linear_order()) {
        if (n > 4) return Unsupported{"linear order degrees computed for n <= 4 only"};
        const long long generation = enumerate_types(spec, target).size();
        const BigInt formula = devlin_degree(n);
        row.degree = generation;
        row.methods = {DegreeMethod::formula, DegreeMethod::generation};
        row.depth_used = 2 * n - 1;
        row.flagged = formula != generation;
        if (n <= 3) {
            const int depth = 11;  // frozen: the reference scan stabilizes here
            const long long scan =
                realized_types_in_depth(reference_prefix(spec, depth), n, depth).size();
            row.methods.push_back(DegreeMethod::scan);
            row.depth_used = depth;
            row.flagged = row.flagged || scan != generation;
        }
        return row;
    }

    if (spec.as_unrestricted()) {
        if (n > 3) return Unsupported{"unrestricted degrees computed for |target| <= 3"};
        const long long generation = enumerate_types(spec, target).size();
        // scan of the full pattern tree at two consecutive depths; equality
        // of the counts is the finite stabilization proxy
        auto scan_at = [&](int depth) {
            long long count = 0;
            for (const auto& e : realized_types_in_sauer(spec, n, depth).entries)
                if (is_isomorphic(e.decoded, target)) ++count;
            return count;
        };
        const int depth = n + 2;
        const long long scan = scan_at(depth), again = scan_at(depth + 1);
        row.degree = generation;
        row.methods = {DegreeMethod::generation, DegreeMethod::scan};
        row.depth_used = depth + 1;
        row.flagged = scan != again || scan != generation;
        return row;
    }

    const auto* forb = spec.as_forb();
    if (forb->forbidden.size() != 1 ||
        !is_isomorphic(forb->forbidden[0], complete_graph(3)))
        return Unsupported{"forbidden-substructure degrees computed for Forb({K3}) only"};
    FinStructure single_edge(spec.signature(), 2);
    single_edge.add(0, {0, 1});
    if (n > 2 || (n == 2 && !is_isomorphic(target, single_edge)))
        return Unsupported{"Forb({K3}) degrees computed for vertex and edge only"};
    row.degree = g3_scan_degree(spec, target, kG3PrefixDepth);
    row.methods = {DegreeMethod::scan};
    row.depth_used = kG3PrefixDepth;
    row.flagged = false;
    return row;
}

DegreeTable degree_table(const std::vector<ClassSpec>& specs, int max_size) {
    DegreeTable table;
    for (const auto& spec : specs)
        for (int size = 1; size <= max_size; ++size) {
            std::vector<FinStructure> reps;
            for (const auto& member : all_members_of_size(spec, size)) {
                bool dup = false;
                for (const auto& seen : reps)
                    if (is_isomorphic(member, seen)) dup = true;
                if (!dup) reps.push_back(member);
            }
            std::sort(reps.begin(), reps.end(),
                      [](const FinStructure& a, const FinStructure& b) {
                          return a.canonical_encoding() < b.canonical_encoding();
                      });
            for (const auto& target : reps) {
                auto result = big_ramsey_degree(spec, target);
                if (auto* degree_row = std::get_if<DegreeRow>(&result))
                    table.rows.push_back(std::move(*degree_row));
            }
        }
    return table;
}

bool PersistenceProxyReport::all_passed() const {
    return !trials.empty() &&
           std::all_of(trials.begin(), trials.end(),
                       [](const PersistenceTrialReport& t) { return t.all_types_found; });
}

PersistenceProxyReport persistence_proxy(const ClassSpec& spec,
                                         const FinStructure& target,
                                         int subtree_size, int trials,
                                         std::uint64_t seed) {
    const auto catalog = enumerate_types(spec, target);
    const int n = target.size;
    if (subtree_size < n)
        throw std::domain_error("persistence_proxy: subtree_size >= |target| required");
    const SimilarityFlavor flavor = flavor_for(spec);
    const std::vector<Code> codes = allowed_codes(spec);

    PersistenceProxyReport report;
    report.master_seed = seed;
    report.subtree_size = subtree_size;
    for (int t = 0; t < trials; ++t) {
        PersistenceTrialReport trial;
        trial.seed = seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(t + 1));
        std::mt19937_64 rng(trial.seed);
        // a pseudorandom sub-enumeration of the limit structure
        FinStructure s(spec.signature(), subtree_size);
        if (spec.is_linear_order()) {
            std::vector<int> rank(subtree_size);
            for (int i = 0; i < subtree_size; ++i) rank[i] = i;
            std::shuffle(rank.begin(), rank.end(), rng);
            for (int i = 0; i < subtree_size; ++i)
                for (int j = 0; j < subtree_size; ++j)
                    if (rank[i] < rank[j]) s.add(0, {i, j});
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
            for (int j = 1; j < subtree_size; ++j)
                for (int i = 0; i < j; ++i) apply_code(s, i, j, codes[pick(rng)]);
        }
        std::vector<CodeSeq> coding;
        for (int i = 0; i < subtree_size; ++i) coding.push_back(type_of(s, i, i));

        std::set<std::vector<int>> realized;
        std::vector<int> pickv;
        auto rec = [&](auto&& self, int from) -> void {
            if (static_cast<int>(pickv.size()) == n) {
                std::vector<CodeSeq> nodes;
                for (int i : pickv) nodes.push_back(coding[i]);
                if (is_diagonal(nodes)) realized.insert(canonical_form(nodes, flavor).flat());
                return;
            }
            for (int i = from; i < subtree_size; ++i) {
                bool ok = true;
                for (int chosen : pickv)
                    if (!incomparable(coding[chosen], coding[i])) ok = false;
                if (!ok) continue;
                pickv.push_back(i);
                self(self, i + 1);
                pickv.pop_back();
            }
        };
        rec(rec, 0);
        trial.all_types_found =
            std::all_of(catalog.entries.begin(), catalog.entries.end(),
                        [&](const CatalogEntry& e) { return realized.count(e.diagram.flat()); });
        report.trials.push_back(trial);
    }
    return report;
}

}  // namespace bigdeg
