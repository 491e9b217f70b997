#ifndef BIGDEG_LAB_HPP
#define BIGDEG_LAB_HPP

#include <cstdint>
#include <vector>

namespace bigdeg {

/// Outcome of an exhaustive finite partition-theorem check. The ground set
/// being colored depends on the check: k-subsets of [N], nodes of the full
/// binary tree of depth N, or its height-k strong subtrees, always in the
/// enumeration order of the matching helper below.
struct WitnessReport {
    enum class Verdict { AllColoringsAdmitWitness, CounterexampleColoring, Inconclusive };

    Verdict verdict = Verdict::Inconclusive;
    std::vector<int> counterexample;        // one color per ground element
    bool counterexample_reverified = false; // rechecked: it admits no witness
    long long ground_size = 0;
    long long colorings_checked = 0;
    long long budget = 0;
};

/// Coloring budget: default 2^30, overridden by the BIGDEG_BUDGET env var.
long long coloring_budget();

/// All k-element subsets of {0..N-1}, ascending within and across.
std::vector<std::vector<int>> k_subsets(int N, int k);

/// A strong subtree of the full binary tree 2^{<=N}, nodes in heap order
/// (node v at level l has index 2^l - 1 + v).
struct StrongSubtree {
    std::vector<int> levels;
    std::vector<int> nodes;
};

/// Every strong subtree of the given height: a level set l_0 < ... <
/// l_{height-1}, one root at l_0, and per node and immediate direction
/// exactly one descendant at the next chosen level.
std::vector<StrongSubtree> strong_subtrees(int N, int height);

/// Finite Ramsey check: every r-coloring of the k-subsets of [N] admits a
/// monochromatic target_size-subset.
WitnessReport ramsey_check(int N, int k, int r, int target_size);

/// Finite Halpern-Lauchli (single tree): every r-coloring of the nodes of
/// 2^{<=N} admits a node-monochromatic strong subtree of height m.
WitnessReport hl_finite(int m, int r, int N);

/// Finite Milliken: every r-coloring of the height-k_levels strong subtrees
/// of 2^{<=N} admits a strong subtree of height target_height all of whose
/// height-k_levels strong subtrees share one color (target_height defaults
/// to k_levels + 1).
WitnessReport milliken_finite(int k_levels, int r, int N, int target_height = -1);

}  // namespace bigdeg

#endif
