#ifndef BIGDEG_DEGREES_HPP
#define BIGDEG_DEGREES_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bigdeg/prefix.hpp"
#include "bigdeg/similarity.hpp"
#include "bigdeg/structures.hpp"

namespace bigdeg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact Taylor coefficients of tan(x); only odd indices are nonzero.
struct TangentSeries {
    std::vector<Rational> odd;  // odd[k] = c_{2k+1}

    Rational c(int k) const;  // c_k for any k >= 1 (zero at even k)
};

/// Coefficients c_1, c_3, ..., c_{2M-1} via the recurrence tan' = 1 + tan^2
/// on formal power series in exact rational arithmetic.
TangentSeries tangent_coefficients(int M);

/// T(n) = (2n-1)! * c_{2n-1}. The product is checked to be integral;
/// a non-integer would be an internal consistency error.
BigInt devlin_degree(int n);

enum class DegreeMethod { formula, generation, scan };

struct DegreeRow {
    std::string spec_id;
    FinStructure target;
    long long degree = 0;
    std::vector<DegreeMethod> methods;  // each produced `degree` independently
    int depth_used = 0;                 // deepest scan / witness depth involved
    bool flagged = false;               // set when the methods disagree
};

/// Explicit refusal for (spec, target) pairs outside the supported set.
struct Unsupported {
    std::string reason;
};

using DegreeResult = std::variant<DegreeRow, Unsupported>;

/// Supported pairs: linear order with n <= 4; unrestricted binary classes
/// with |target| <= 3; Forb({K3}) with target a vertex or an edge.
DegreeResult big_ramsey_degree(const ClassSpec& spec, const FinStructure& target);

struct DegreeTable {
    std::vector<DegreeRow> rows;
};

/// One row per supported (spec, iso-class of target) with size <= max_size,
/// in deterministic order; unsupported pairs are skipped.
DegreeTable degree_table(const std::vector<ClassSpec>& specs, int max_size);

/// Witness data for the diagonal-substructure conditions in Forb({K3}).
struct DiagonalSubstructureCertificate {
    std::vector<int> index_set;            // I, ascending
    std::map<int, int> earliest_neighbor;  // i -> m_i, least m < i with an edge
    std::map<std::pair<int, int>, int> common_neighbor;  // (i,j) -> n(i,j)
};

struct ClauseViolation {
    char clause = '?';           // 'a', 'b' or 'c'
    std::vector<int> offenders;  // the indices that violate it
};

using DiagonalCheckResult =
    std::variant<DiagonalSubstructureCertificate, ClauseViolation>;

/// Literal check of the three diagonal-substructure conditions:
/// (a) every v_i, i in I, has an edge to some earlier v_m (m_i = least);
/// (b) for a non-edge pair i < j in I with m_j < i there is an earlier
///     common neighbor, and the least one, n(i,j), is outside I;
/// (c) the n(i,j) are pairwise distinct across distinct defined pairs.
DiagonalCheckResult g3_diagonal_check(const EnumeratedPrefix& prefix,
                                      const std::vector<int>& index_set);

struct PersistenceTrialReport {
    std::uint64_t seed = 0;
    bool all_types_found = false;
};

struct PersistenceProxyReport {
    std::uint64_t master_seed = 0;
    int subtree_size = 0;
    std::vector<PersistenceTrialReport> trials;
    bool all_passed() const;
};

/// Finite proxy of persistence: every catalog type of `target` must recur
/// inside each of `trials` pseudorandom sub-enumerations of the limit
/// structure (random suborders / random pattern tables) of the given size.
PersistenceProxyReport persistence_proxy(const ClassSpec& spec,
                                         const FinStructure& target,
                                         int subtree_size, int trials,
                                         std::uint64_t seed);

}  // namespace bigdeg

#endif
