#ifndef BIGDEG_CODING_TREE_HPP
#define BIGDEG_CODING_TREE_HPP

#include <string>
#include <vector>

#include "bigdeg/onetype.hpp"
#include "bigdeg/prefix.hpp"
#include "bigdeg/structures.hpp"

namespace bigdeg {

/// Longest common initial segment.
CodeSeq meet(const CodeSeq& s, const CodeSeq& t);

/// True iff neither sequence extends the other (s == t counts as comparable).
bool incomparable(const CodeSeq& s, const CodeSeq& t);

enum class LexOrder { less, greater };

/// Order of two tree-incomparable sequences by the digit at their meet
/// level. Throws domain_error if one extends the other.
LexOrder lex_compare(const CodeSeq& s, const CodeSeq& t);

/// t's digit at s's length. Throws domain_error unless |s| < |t|.
Code passing_number(const CodeSeq& t, const CodeSeq& s);

/// S together with all pairwise meets; sorted, duplicate-free.
std::vector<CodeSeq> meet_closure(std::vector<CodeSeq> s);

/// True iff no two members of mc(S) have the same length. Throws
/// domain_error if S is not an antichain.
bool is_diagonal(const std::vector<CodeSeq>& s);

/// The tree of all realizable 1-types of stage <= depth over the prefix's
/// initial substructures, with the coding map n -> type of v_n over K_n.
struct CodingTree {
    ClassSpec spec;
    FinStructure prefix_structure;
    int depth = 0;
    std::vector<std::vector<CodeSeq>> levels;  // levels[l]: stage-l nodes, sorted
    std::vector<CodeSeq> coding;               // coding[n] has length n

    bool contains(const CodeSeq& node) const;
    std::vector<CodeSeq> successors(const CodeSeq& node) const;
    int node_count() const;
};

CodingTree build_coding_tree(const EnumeratedPrefix& prefix, int depth);

/// One node per line: level, parent index within the previous level, last
/// code digit (-1 at the root), coding index n or -1.
std::string dump_tree(const CodingTree& tree);

/// 2-vertex structure induced on {s, t} of U_C: for |s| < |t| this is the
/// constraint with index t(|s|) oriented s -> 0, t -> 1; equal lengths give
/// constraint 0 oriented by lex order. Throws domain_error on s == t.
FinStructure sauer_relation(const ClassSpec& spec, const CodeSeq& s, const CodeSeq& t);

/// All of k^{<=depth} (k = constraint count) with the sauer_relation
/// structure on it; nodes listed level by level, lex within a level.
struct SauerUniverse {
    std::vector<CodeSeq> nodes;
    FinStructure structure;
};
SauerUniverse sauer_universe(const ClassSpec& spec, int depth);

/// A subset of a tree together with its level set.
struct TreeSubset {
    std::vector<CodeSeq> nodes;
    std::vector<int> level_set;
};

/// Every node of S at a non-maximal S-level must have, for each immediate
/// T-successor direction, an S-node extending it.
bool is_strong_subtree(const TreeSubset& t, const TreeSubset& s);

}  // namespace bigdeg

#endif
