#include "bigdeg/prefix.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace bigdeg {

namespace {

// Fast per-class consistency check for adding one more literal to a
// partial type. `t` covers stages 0..i-1 over `k`; `code` is the
// candidate literal for stage i. Exact for the three class variants.
class TypeExtender {
  public:
    TypeExtender(const FinStructure& k, const ClassSpec& spec)
        : k_(k), spec_(spec), alphabet_(code_alphabet_size(k.signature)) {
        if (const auto* u = spec.as_unrestricted()) {
            FinStructure probe(k.signature, 2);
            for (Code c = 0; c < alphabet_; ++c) {
                FinStructure pat = probe;
                apply_code(pat, 0, 1, c);
                bool ok = std::any_of(
                    u->constraints.begin(), u->constraints.end(),
                    [&](const FinStructure& cons) { return is_isomorphic(pat, cons); });
                if (ok) allowed_.push_back(c);
            }
        }
    }

    int alphabet() const { return alphabet_; }

    bool code_ok(const CodeSeq& t, int stage, Code code) const {
        if (spec_.is_linear_order()) return lo_ok(t, stage, code);
        if (spec_.as_unrestricted())
            return std::find(allowed_.begin(), allowed_.end(), code) != allowed_.end();
        return forb_ok(t, stage, code);
    }

    /// Least code extending t at `stage`, or -1.
    int least_code(const CodeSeq& t, int stage) const {
        for (Code c = 0; c < alphabet_; ++c)
            if (code_ok(t, stage, c)) return c;
        return -1;
    }

  private:
    bool lo_ok(const CodeSeq& t, int stage, Code code) const {
        // 1 = (x < v_stage), 2 = (v_stage < x); nothing else is a cut.
        if (code != 1 && code != 2) return false;
        for (int j = 0; j < static_cast<int>(t.size()); ++j) {
            if (code == 1 && t[j] == 2 && !k_.has(0, {j, stage})) return false;
            if (code == 2 && t[j] == 1 && !k_.has(0, {stage, j})) return false;
        }
        return true;
    }

    bool forb_ok(const CodeSeq& t, int stage, Code code) const {
        if (code == 0) return true;  // free amalgamation: relating nothing is safe
        // A new violation must use both x and v_stage; search embeddings
        // of each forbidden structure with those two vertices pinned.
        FinStructure ext = k_.restrict(range(stage + 1));
        ext.size = stage + 2;
        const int x = stage + 1;
        for (int j = 0; j < static_cast<int>(t.size()) && j <= stage; ++j)
            apply_code(ext, j, x, t[j]);
        apply_code(ext, stage, x, code);
        for (const auto& f : spec_.as_forb()->forbidden) {
            for (int fa = 0; fa < f.size; ++fa)
                for (int fb = 0; fb < f.size; ++fb) {
                    if (fa == fb) continue;
                    if (embeds_pinned(f, ext, fa, x, fb, stage)) return false;
                }
        }
        return true;
    }

    static std::vector<int> range(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return v;
    }

    static bool embeds_pinned(const FinStructure& f, const FinStructure& host,
                              int fa, int ha, int fb, int hb) {
        std::vector<int> img(f.size, -1);
        img[fa] = ha;
        img[fb] = hb;
        if (ha == hb) return false;
        std::vector<bool> used(host.size, false);
        used[ha] = used[hb] = true;
        return pinned_rec(f, host, img, used, 0);
    }

    static bool pinned_rec(const FinStructure& f, const FinStructure& host,
                           std::vector<int>& img, std::vector<bool>& used, int at) {
        while (at < f.size && img[at] >= 0) ++at;
        if (at == f.size) return consistent(f, host, img);
        for (int v = 0; v < host.size; ++v) {
            if (used[v]) continue;
            img[at] = v;
            used[v] = true;
            if (pinned_rec(f, host, img, used, at + 1)) return true;
            used[v] = false;
            img[at] = -1;
        }
        return false;
    }

    static bool consistent(const FinStructure& f, const FinStructure& host,
                           const std::vector<int>& img) {
        for (std::size_t r = 0; r < f.tuples.size(); ++r)
            for (int i = 0; i < f.size; ++i)
                for (int j = 0; j < f.size; ++j) {
                    if (i == j) continue;
                    if (f.has(r, {i, j}) && !host.has(r, {img[i], img[j]})) return false;
                }
        return true;
    }

    const FinStructure& k_;
    const ClassSpec& spec_;
    int alphabet_;
    std::vector<Code> allowed_;
};

struct QueueEntry {
    int stage = 0;
    CodeSeq type;
    int enqueued_at = 0;
    int queue_len_at_enqueue = 0;
};

bool embeds_using(const FinStructure& f, const FinStructure& host, int must_use,
                  std::vector<int>& img, std::vector<bool>& used, int at) {
    if (at == f.size) {
        if (std::find(img.begin(), img.end(), must_use) == img.end()) return false;
        for (std::size_t r = 0; r < f.tuples.size(); ++r)
            for (int i = 0; i < f.size; ++i)
                for (int j = 0; j < f.size; ++j) {
                    if (i == j) continue;
                    if (f.has(r, {i, j}) != host.has(r, {img[i], img[j]})) return false;
                }
        return true;
    }
    for (int v = 0; v < host.size; ++v) {
        if (used[v]) continue;
        img[at] = v;
        used[v] = true;
        if (embeds_using(f, host, must_use, img, used, at + 1)) return true;
        used[v] = false;
    }
    return false;
}

/// Membership recheck restricted to constraints involving the newest
/// vertex; equivalent to class_member when the first size-1 vertices are
/// already known to form a class member.
bool last_vertex_ok(const FinStructure& a, const ClassSpec& spec) {
    const int x = a.size - 1;
    if (spec.is_linear_order()) {
        if (a.has(0, {x, x})) return false;
        for (int i = 0; i < x; ++i)
            if (a.has(0, {i, x}) == a.has(0, {x, i})) return false;
        for (int i = 0; i < x; ++i)
            for (int j = 0; j < x; ++j) {
                if (i == j) continue;
                if (a.has(0, {i, x}) && a.has(0, {x, j}) && !a.has(0, {i, j})) return false;
                if (a.has(0, {i, j}) && a.has(0, {j, x}) && !a.has(0, {i, x})) return false;
                if (a.has(0, {x, i}) && a.has(0, {i, j}) && !a.has(0, {x, j})) return false;
            }
        return true;
    }
    if (const auto* u = spec.as_unrestricted()) {
        for (int i = 0; i < x; ++i) {
            FinStructure pair = a.restrict({i, x});
            bool ok = std::any_of(
                u->constraints.begin(), u->constraints.end(),
                [&](const FinStructure& c) { return is_isomorphic(pair, c); });
            if (!ok) return false;
        }
        return true;
    }
    for (const auto& bad : spec.as_forb()->forbidden) {
        std::vector<int> img(bad.size, -1);
        std::vector<bool> used(a.size, false);
        if (embeds_using(bad, a, x, img, used, 0)) return false;
    }
    return true;
}

}  // namespace

EnumeratedPrefix build_prefix(const ClassSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("build_prefix: N >= 1 required");
    const Signature sig = spec.signature();
    {
        FinStructure one(sig, 1);
        if (!class_member(one, spec))
            throw std::domain_error("build_prefix: class has no 1-element structure");
    }

    EnumeratedPrefix out;
    out.spec = spec;
    out.structure = FinStructure(sig, 0);

    std::deque<QueueEntry> queue;
    queue.push_back(QueueEntry{0, {}, 0, 0});

    for (int step = 0; step < n; ++step) {
        if (queue.empty()) throw std::logic_error("build_prefix: schedule queue ran dry");
        QueueEntry head = queue.front();
        queue.pop_front();

        TypeExtender ext(out.structure, spec);
        CodeSeq realized = head.type;
        for (int i = head.stage; i < out.structure.size; ++i) {
            int c = ext.least_code(realized, i);
            if (c < 0) throw std::logic_error("build_prefix: unrealizable stage");
            realized.push_back(static_cast<Code>(c));
        }

        // v_step enters the structure.
        FinStructure next = extend_by_type(out.structure, realized);
        if (!last_vertex_ok(next, spec)) throw std::logic_error("build_prefix: stage left class");
        out.structure = std::move(next);

        out.log.push_back(EnumeratedPrefix::ScheduleEntry{
            head.stage, head.type, realized, head.enqueued_at, head.queue_len_at_enqueue});

        // Enqueue the head's one-step extensions over the grown prefix.
        TypeExtender ext2(out.structure, spec);
        if (head.stage < out.structure.size) {
            for (Code c = 0; c < ext2.alphabet(); ++c) {
                CodeSeq child = head.type;
                if (!ext2.code_ok(child, head.stage, c)) continue;
                child.push_back(c);
                queue.push_back(QueueEntry{head.stage + 1, child, step,
                                           static_cast<int>(queue.size())});
            }
        }
    }
    return out;
}

EnumeratedPrefix prefix_from_structure(const ClassSpec& spec, const FinStructure& s) {
    if (s.signature != spec.signature())
        throw std::invalid_argument("prefix_from_structure: signature mismatch");
    EnumeratedPrefix out;
    out.spec = spec;
    out.structure = s;
    std::vector<int> front;
    for (int m = 0; m <= s.size; ++m) {
        if (m > 0 && !class_member(s.restrict(front), spec))
            throw std::domain_error("prefix_from_structure: initial segment not in class");
        front.push_back(m);
    }
    for (int j = 0; j < s.size; ++j) {
        CodeSeq t = type_of(s, j, j);
        out.log.push_back(EnumeratedPrefix::ScheduleEntry{j, t, t, j, 0});
    }
    return out;
}

int PairColoring::at(int i, int j) const {
    if (i >= j) throw std::domain_error("PairColoring: i < j required");
    return colors[static_cast<std::size_t>(j) * (j - 1) / 2 + i];
}

void PairColoring::set(int i, int j, int color) {
    if (i >= j) throw std::domain_error("PairColoring: i < j required");
    colors[static_cast<std::size_t>(j) * (j - 1) / 2 + i] = color;
}

PairColoring PairColoring::constant(int n, int color, int color_count) {
    PairColoring c;
    c.domain_size = n;
    c.color_count = color_count;
    c.colors.assign(static_cast<std::size_t>(n) * (n - 1) / 2, color);
    return c;
}

PairColor sierpinski_color(const EnumeratedPrefix& prefix, int i, int j) {
    if (!prefix.spec.is_linear_order())
        throw std::domain_error("sierpinski_color: linear-order prefixes only");
    if (i >= j || j >= prefix.size())
        throw std::domain_error("sierpinski_color: need i < j < N");
    return prefix.structure.has(0, {i, j}) ? PairColor::blue : PairColor::red;
}

PairColoring sierpinski_coloring(const EnumeratedPrefix& prefix) {
    PairColoring c = PairColoring::constant(prefix.size(), 0);
    for (int j = 1; j < prefix.size(); ++j)
        for (int i = 0; i < j; ++i)
            c.set(i, j, static_cast<int>(sierpinski_color(prefix, i, j)));
    return c;
}

bool PersistenceReport::every_trial_saw(int color) const {
    return std::all_of(trials.begin(), trials.end(), [&](const PersistenceTrial& t) {
        return t.colors_seen.count(color) > 0;
    });
}

PersistenceReport persistence_sample(const EnumeratedPrefix& prefix,
                                     const PairColoring& coloring,
                                     int subcopy_size, int trials,
                                     std::uint64_t seed) {
    const int n = prefix.size();
    if (subcopy_size > n || subcopy_size < 0)
        throw std::domain_error("persistence_sample: no subcopy of requested size");
    PersistenceReport report;
    report.master_seed = seed;
    report.subcopy_size = subcopy_size;
    for (int t = 0; t < trials; ++t) {
        // Per-trial seed derived deterministically; trials are independent.
        std::uint64_t trial_seed = seed ^ (0x9e3779b97f4a7c15ull * (t + 1));
        std::mt19937_64 rng(trial_seed);
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(subcopy_size);
        std::sort(idx.begin(), idx.end());
        PersistenceTrial trial;
        trial.seed = trial_seed;
        trial.subcopy = idx;
        for (int a = 0; a < subcopy_size; ++a)
            for (int b = a + 1; b < subcopy_size; ++b)
                trial.colors_seen.insert(coloring.at(idx[a], idx[b]));
        report.trials.push_back(std::move(trial));
    }
    return report;
}

}  // namespace bigdeg
