#ifndef BIGDEG_ONETYPE_HPP
#define BIGDEG_ONETYPE_HPP

#include <cstdint>
#include <vector>

#include "bigdeg/structures.hpp"

namespace bigdeg {

/// A 1-type over an initial substructure K_n is stored as one pattern
/// code per earlier vertex. Per relation symbol, in signature order
/// (symbol 0 most significant): symmetric symbols contribute one bit
/// (related or not), others two bits (high: R(v_i, x), low: R(x, v_i)).
/// The resulting integer order realizes the literal order
/// (x < q_i) before (q_i < x).
using Code = std::uint16_t;
using CodeSeq = std::vector<Code>;

/// Number of distinct codes for a signature (4 per asymmetric binary
/// symbol, 2 per symmetric one; unary symbols are out of scope here).
int code_alphabet_size(const Signature& sig);

/// The code describing how vertex x relates to the earlier vertex u in s.
Code pair_code(const FinStructure& s, int u, int x);

/// Installs the relations described by `code` between old vertex u and
/// new vertex x.
void apply_code(FinStructure& s, int u, int x, Code code);

/// The 1-type of vertex j over the first n vertices of s.
CodeSeq type_of(const FinStructure& s, int j, int n);

/// K_n extended by a new vertex realizing type t (|t| = k.size).
FinStructure extend_by_type(const FinStructure& k, const CodeSeq& t);

/// Clause (b): some vertex extending K_n in the class satisfies t.
bool type_realizable(const FinStructure& k, const CodeSeq& t, const ClassSpec& spec);

}  // namespace bigdeg

#endif
