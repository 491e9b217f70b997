#include "bigdeg/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace bigdeg {

long long coloring_budget() {
    if (const char* env = std::getenv("BIGDEG_BUDGET")) {
        const long long parsed = std::atoll(env);
        if (parsed > 0) return parsed;
    }
    return 1LL << 30;
}

std::vector<std::vector<int>> k_subsets(int N, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = from; i < N; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

int node_level(int idx) {
    int l = 0;
    while ((2 << l) - 1 <= idx) ++l;
    return l;
}

int ancestor_at(int idx, int target_level) {
    const int l = node_level(idx);
    const int v = idx + 1 - (1 << l);
    return (1 << target_level) - 1 + (v >> (l - target_level));
}

/// Strong subtrees of height `height` with levels drawn from `levels` and
/// nodes drawn from `allowed` (empty `allowed` = the whole tree).
std::vector<StrongSubtree> strong_subtrees_within(const std::vector<int>& levels,
                                                  const std::set<int>& allowed,
                                                  int height) {
    std::vector<StrongSubtree> out;
    if (height < 1 || static_cast<int>(levels.size()) < height) return out;
    auto permitted = [&](int idx) { return allowed.empty() || allowed.count(idx); };

    std::vector<int> chosen;  // indices into `levels`
    auto levels_rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(chosen.size()) == height) {
            std::vector<int> level_set;
            for (int c : chosen) level_set.push_back(levels[c]);
            const int l0 = level_set[0];
            for (int v = 0; v < (1 << l0); ++v) {
                const int root = (1 << l0) - 1 + v;
                if (!permitted(root)) continue;
                std::vector<std::vector<int>> tiers{{root}};
                std::function<void()> extend = [&]() {
                    const int depth = static_cast<int>(tiers.size());
                    if (depth == height) {
                        StrongSubtree s;
                        s.levels = level_set;
                        for (const auto& tier : tiers)
                            s.nodes.insert(s.nodes.end(), tier.begin(), tier.end());
                        std::sort(s.nodes.begin(), s.nodes.end());
                        out.push_back(std::move(s));
                        return;
                    }
                    const int next = level_set[depth];
                    // one slot per (node of the previous tier, direction)
                    const auto& prev = tiers.back();
                    std::vector<std::vector<int>> options;
                    for (int u : prev)
                        for (int d = 0; d < 2; ++d) {
                            const int child = 2 * u + 1 + d;
                            std::vector<int> cand;
                            const int lu = node_level(u);
                            for (int w = (1 << next) - 1; w < (2 << next) - 1; ++w)
                                if (permitted(w) && ancestor_at(w, lu + 1) == child)
                                    cand.push_back(w);
                            if (cand.empty()) return;  // direction cannot be covered
                            options.push_back(std::move(cand));
                        }
                    std::vector<int> pick(options.size(), 0);
                    std::function<void(std::size_t)> odometer = [&](std::size_t at) {
                        if (at == options.size()) {
                            std::vector<int> tier;
                            for (std::size_t i = 0; i < options.size(); ++i)
                                tier.push_back(options[i][pick[i]]);
                            tiers.push_back(std::move(tier));
                            extend();
                            tiers.pop_back();
                            return;
                        }
                        for (std::size_t v2 = 0; v2 < options[at].size(); ++v2) {
                            pick[at] = static_cast<int>(v2);
                            odometer(at + 1);
                        }
                    };
                    odometer(0);
                };
                extend();
            }
            return;
        }
        for (int i = from; i < static_cast<int>(levels.size()); ++i) {
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    levels_rec(levels_rec, 0);
    return out;
}

/// Exhaustive sweep over r^ground colorings. `admits_witness` inspects the
/// current color vector; the sweep stops at the first coloring admitting
/// none and reports it as a counterexample (re-verified by rerunning).
WitnessReport sweep(long long ground, int r,
                    const std::function<bool(const std::vector<int>&)>& admits_witness) {
    WitnessReport report;
    report.ground_size = ground;
    report.budget = coloring_budget();
    if (r < 1) throw std::domain_error("color count must be positive");
    const double total_log2 = static_cast<double>(ground) * std::log2(static_cast<double>(r));
    if (total_log2 > std::log2(static_cast<double>(report.budget))) {
        report.verdict = WitnessReport::Verdict::Inconclusive;
        return report;
    }
    std::vector<int> colors(ground, 0);
    while (true) {
        ++report.colorings_checked;
        if (!admits_witness(colors)) {
            report.verdict = WitnessReport::Verdict::CounterexampleColoring;
            report.counterexample = colors;
            report.counterexample_reverified = !admits_witness(colors);
            return report;
        }
        // odometer step
        long long at = 0;
        while (at < ground && ++colors[at] == r) colors[at++] = 0;
        if (at == ground) break;
    }
    report.verdict = WitnessReport::Verdict::AllColoringsAdmitWitness;
    return report;
}

}  // namespace

std::vector<StrongSubtree> strong_subtrees(int N, int height) {
    if (N < 0) throw std::domain_error("strong_subtrees: N >= 0 required");
    std::vector<int> levels(N + 1);
    for (int l = 0; l <= N; ++l) levels[l] = l;
    return strong_subtrees_within(levels, {}, height);
}

WitnessReport ramsey_check(int N, int k, int r, int target_size) {
    if (k < 1 || N < 0 || target_size < 0 || target_size > N)
        throw std::domain_error("ramsey_check: need k >= 1 and 0 <= targetSize <= N");
    const auto ground = k_subsets(N, k);
    // per candidate witness set, the indices of its k-subsets
    std::vector<std::vector<int>> targets;
    for (const auto& candidate : k_subsets(N, target_size)) {
        std::vector<int> parts;
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (std::includes(candidate.begin(), candidate.end(), ground[i].begin(),
                              ground[i].end()))
                parts.push_back(static_cast<int>(i));
        targets.push_back(std::move(parts));
    }
    return sweep(static_cast<long long>(ground.size()), r,
                 [&](const std::vector<int>& colors) {
                     for (const auto& parts : targets) {
                         bool mono = true;
                         for (std::size_t i = 1; i < parts.size(); ++i)
                             if (colors[parts[i]] != colors[parts[0]]) mono = false;
                         if (mono) return true;
                     }
                     return false;
                 });
}

WitnessReport hl_finite(int m, int r, int N) {
    if (m < 1 || N < 0) throw std::domain_error("hl_finite: m >= 1 and N >= 0 required");
    const long long ground = (2LL << N) - 1;  // nodes of 2^{<=N}, heap order
    const auto subtrees = strong_subtrees(N, m);
    return sweep(ground, r, [&](const std::vector<int>& colors) {
        for (const auto& s : subtrees) {
            bool mono = true;
            for (std::size_t i = 1; i < s.nodes.size(); ++i)
                if (colors[s.nodes[i]] != colors[s.nodes[0]]) mono = false;
            if (mono) return true;
        }
        return false;
    });
}

WitnessReport milliken_finite(int k_levels, int r, int N, int target_height) {
    if (k_levels < 1 || N < 0)
        throw std::domain_error("milliken_finite: k_levels >= 1 and N >= 0 required");
    if (target_height < 0) target_height = k_levels + 1;
    if (target_height < k_levels)
        throw std::domain_error("milliken_finite: target_height >= k_levels required");
    const auto ground = strong_subtrees(N, k_levels);
    std::map<std::vector<int>, int> index_of;
    for (std::size_t i = 0; i < ground.size(); ++i)
        index_of[ground[i].nodes] = static_cast<int>(i);
    // per candidate target subtree, the ground indices of its sub-subtrees
    std::vector<std::vector<int>> targets;
    for (const auto& host : strong_subtrees(N, target_height)) {
        const std::set<int> allowed(host.nodes.begin(), host.nodes.end());
        std::vector<int> parts;
        for (const auto& sub : strong_subtrees_within(host.levels, allowed, k_levels))
            parts.push_back(index_of.at(sub.nodes));
        targets.push_back(std::move(parts));
    }
    return sweep(static_cast<long long>(ground.size()), r,
                 [&](const std::vector<int>& colors) {
                     for (const auto& parts : targets) {
                         bool mono = true;
                         for (std::size_t i = 1; i < parts.size(); ++i)
                             if (colors[parts[i]] != colors[parts[0]]) mono = false;
                         if (mono) return true;
                     }
                     return false;
                 });
}

}  // namespace bigdeg
