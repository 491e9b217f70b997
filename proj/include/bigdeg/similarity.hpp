#ifndef BIGDEG_SIMILARITY_HPP
#define BIGDEG_SIMILARITY_HPP

#include <string>
#include <vector>

#include "bigdeg/coding_tree.hpp"
#include "bigdeg/onetype.hpp"
#include "bigdeg/structures.hpp"

namespace bigdeg {

/// Which data a similarity bijection must preserve besides shape, relative
/// heights and coding flags: full passing numbers, or lex order only.
enum class SimilarityFlavor { lex_only, passing_numbers };

/// Canonical invariant of a node set under similarity. Nodes of the meet
/// closure are relabelled 0..m-1 in height order (ties broken to minimize
/// the encoding), so two sets are similar iff their diagrams are equal.
struct SimilarityDiagram {
    SimilarityFlavor flavor = SimilarityFlavor::lex_only;
    int m = 0;
    std::vector<int> parent;       // meet-predecessor, -1 at the root
    std::vector<int> height_rank;  // dense rank of node lengths (ties share)
    std::vector<char> coding_flag;
    std::vector<int> lex_rank;     // rank of the node's digit among its siblings'
    std::vector<std::vector<int>> passing;  // [i][j] = digit of i at j's length, -1 n/a

    bool operator==(const SimilarityDiagram&) const = default;
    std::vector<int> flat() const;  // comparison key
    std::string encode() const;     // export form
};

bool diagram_less(const SimilarityDiagram& a, const SimilarityDiagram& b);

SimilarityDiagram canonical_form(const std::vector<CodeSeq>& a, SimilarityFlavor flavor);

bool is_similar(const std::vector<CodeSeq>& a, const std::vector<CodeSeq>& b,
                SimilarityFlavor flavor);

/// The structure represented by the diagram's flagged nodes: one vertex per
/// flag in height order, related by lex order (linear orders) or by the
/// constraint selected by the passing number at the lower flagged node.
FinStructure decoded_structure(const SimilarityDiagram& diagram, const ClassSpec& spec);

struct CatalogEntry {
    SimilarityDiagram diagram;
    FinStructure decoded;
    std::vector<CodeSeq> witness;  // realizing antichain; empty if none found
    bool inconclusive = false;     // generated but unwitnessed within depth
};

struct TypeCatalog {
    std::vector<CatalogEntry> entries;  // sorted by diagram key, no duplicates

    int size() const { return static_cast<int>(entries.size()); }
    bool contains(const SimilarityDiagram& d) const;
    std::vector<std::string> lines() const;  // export: encoding, structure, witness
};

/// Exhaustively classifies diagonal antichains of n coding nodes c_0..c_{depth-1}.
TypeCatalog realized_types_in_depth(const CodingTree& tree, int n, int depth);

/// Same scan reading the coding nodes straight off the prefix, without
/// materializing the tree's non-coding levels.
TypeCatalog realized_types_in_depth(const EnumeratedPrefix& prefix, int n, int depth);

/// Same scan over the k^{<=depth} universe, where every node is a vertex;
/// decoded structures come from sauer_relation.
TypeCatalog realized_types_in_sauer(const ClassSpec& spec, int n, int depth);

/// Generates all abstract diagrams whose decoded structure is isomorphic to
/// `target`, then looks for witnesses among the coding nodes of the
/// canonical prefix up to `depth` (default 4|target|). Unwitnessed diagrams
/// are kept with the inconclusive marker set.
TypeCatalog enumerate_types(const ClassSpec& spec, const FinStructure& target,
                            int depth = -1);

/// Flavor conventionally used for a class's coding-tree representation.
SimilarityFlavor flavor_for(const ClassSpec& spec);

/// Pattern codes a new vertex may take toward an old one: all codes for
/// most classes, the constraint-matching ones for unrestricted classes.
std::vector<Code> allowed_codes(const ClassSpec& spec);

/// A deliberately rich enumeration used for witness searches: balanced
/// (dyadic) insertion for linear orders, digit-counting patterns for
/// unrestricted classes. Coding nodes of its tree realize the small
/// similarity types at much lower depth than the canonical schedule.
EnumeratedPrefix reference_prefix(const ClassSpec& spec, int n);

}  // namespace bigdeg

#endif
