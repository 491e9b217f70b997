#ifndef BIGDEG_STRUCTURES_HPP
#define BIGDEG_STRUCTURES_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace bigdeg {

/// A relation symbol in a finite binary-relational language.
/// Symmetric relations are declared, not inferred; tuple sets of
/// symmetric symbols are kept closed under reversal.
struct RelationSymbol {
    std::string name;
    int arity = 2;       // 1 or 2
    bool symmetric = false;

    friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// Ordered list of relation symbols. The list order is fixed: it induces
/// the lexicographic tie-break used when comparing 1-types.
struct Signature {
    std::vector<RelationSymbol> relations;

    friend bool operator==(const Signature&, const Signature&) = default;
};

// Common signatures.
Signature graph_signature();         // one symmetric binary relation E
Signature linear_order_signature();  // one irreflexive binary relation <

using Tuple = std::vector<int>;

/// A finite relational structure on universe {0..size-1}.
struct FinStructure {
    Signature signature;
    int size = 0;
    std::vector<std::set<Tuple>> tuples;  // one set per relation symbol

    FinStructure() = default;
    FinStructure(Signature sig, int n);

    bool has(int rel, const Tuple& t) const;
    /// Adds a tuple; for symmetric symbols also adds the reversal.
    void add(int rel, Tuple t);

    /// Induced substructure on the given vertices (in the given order).
    FinStructure restrict(const std::vector<int>& vertices) const;

    /// Deterministic total encoding of the labelled structure.
    std::vector<std::uint64_t> encode() const;
    /// Minimum encoding over all vertex permutations (exact for desk sizes).
    std::vector<std::uint64_t> canonical_encoding() const;

    bool valid() const;  // indices in range, symmetric closure holds

    friend bool operator==(const FinStructure&, const FinStructure&) = default;
};

// Small builders used throughout the tests and the CLI.
FinStructure empty_graph(int n);
FinStructure complete_graph(int n);
FinStructure path_graph(int n);
FinStructure cycle_graph(int n);
FinStructure chain(int n);  // linear order 0 < 1 < ... < n-1

/// An injective index map between two structures' universes.
struct EmbeddingMap {
    int domain_size = 0;
    int codomain_size = 0;
    std::vector<int> image;  // image[i] = where vertex i goes

    friend bool operator==(const EmbeddingMap&, const EmbeddingMap&) = default;
};

bool is_embedding(const FinStructure& a, const FinStructure& b, const EmbeddingMap& m);
std::vector<EmbeddingMap> embeddings(const FinStructure& a, const FinStructure& b);
bool embeds(const FinStructure& a, const FinStructure& b);
bool is_isomorphic(const FinStructure& a, const FinStructure& b);

/// Declarative description of a Fraisse class.
struct LinearOrderClass {
    friend bool operator==(const LinearOrderClass&, const LinearOrderClass&) = default;
};

/// Unrestricted binary class: membership is decided two vertices at a
/// time against a constraint set C of 2-vertex structures. The list
/// order of `constraints` is the bijection lambda: alphabet digit j
/// stands for constraints[j].
struct UnrestrictedBinaryClass {
    std::vector<FinStructure> constraints;

    friend bool operator==(const UnrestrictedBinaryClass&, const UnrestrictedBinaryClass&) = default;
};

/// Free-amalgamation class Forb(F): nothing in `forbidden` embeds.
struct ForbClass {
    std::vector<FinStructure> forbidden;  // each member irreducible

    friend bool operator==(const ForbClass&, const ForbClass&) = default;
};

struct ClassSpec {
    std::variant<LinearOrderClass, UnrestrictedBinaryClass, ForbClass> variant;
    std::string name;  // stable id used in table output

    Signature signature() const;
    bool is_linear_order() const;
    const UnrestrictedBinaryClass* as_unrestricted() const;
    const ForbClass* as_forb() const;
};

ClassSpec linear_order_class();
ClassSpec rado_graph_class();          // C = {non-edge, edge}
ClassSpec triangle_free_class();       // Forb({K3})

/// Validates the structural invariants of a ClassSpec (constraint set
/// isomorphism-closed and nonempty; forbidden members irreducible).
bool class_spec_valid(const ClassSpec& spec, std::string* why = nullptr);

bool class_member(const FinStructure& a, const ClassSpec& spec);

/// Every 2-vertex pattern over the signature, in canonical encoding
/// order; used as the constraint-set universe and the tree alphabet.
std::vector<FinStructure> all_two_vertex_structures(const Signature& sig);

/// Every labelled structure of size n in the class (exhaustive, desk scale).
std::vector<FinStructure> all_members_of_size(const ClassSpec& spec, int n);

/// One canonical representative per isomorphism class of induced
/// substructure of `universe` with size <= max_size.
std::vector<FinStructure> age(const FinStructure& universe, int max_size);

/// All class members on |x|+1 vertices whose restriction to the first
/// |x| vertices equals x (the new vertex is last). Deterministic order.
std::vector<FinStructure> one_vertex_extensions(const FinStructure& x, const ClassSpec& spec);

enum class AmalgamationMode { AP, SAP, FAP };

struct AmalgamationInstance {
    FinStructure a, b, c;
    EmbeddingMap f;  // A -> B
    EmbeddingMap g;  // A -> C
};

struct AmalgamationWitness {
    FinStructure d;
    EmbeddingMap r;  // B -> D
    EmbeddingMap s;  // C -> D
};

struct AmalgamationResult {
    std::optional<AmalgamationWitness> witness;
    int bound = 0;
    bool found() const { return witness.has_value(); }
};

AmalgamationResult check_amalgamation_bounded(const ClassSpec& spec,
                                              const AmalgamationInstance& inst,
                                              int bound,
                                              AmalgamationMode mode);

/// Outcome of the bounded SDAP check. A' and C' are reported with a
/// VerifiedUpTo verdict; a failing (B, sigma-realizing D) pair is kept
/// with Inconclusive for diagnosis.
struct SdapResult {
    enum class Kind { VerifiedUpTo, Counterexample, Inconclusive } kind;
    int bound = 0;
    std::optional<FinStructure> a_prime, c_prime;
    std::optional<FinStructure> failing_b, failing_d;
};

SdapResult check_sdap_bounded(const ClassSpec& spec,
                              const FinStructure& a,
                              const FinStructure& c,
                              int bound);

}  // namespace bigdeg

#endif
