#ifndef BIGDEG_IO_HPP
#define BIGDEG_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "bigdeg/degrees.hpp"
#include "bigdeg/prefix.hpp"
#include "bigdeg/similarity.hpp"
#include "bigdeg/structures.hpp"

namespace bigdeg {

using Json = nlohmann::json;

/// Document formats (stable; see README for the full grammar):
///
///   Signature      {"relations": [{"name","arity","symmetric"}...]}
///   FinStructure   {"signature", "size", "tuples": [[tuple...]...]}
///                  (tuples[r] lists relation r; symmetric closure included)
///   ClassSpec      {"name", "class": "linear-order"}
///                | {"name", "class": "unrestricted-binary", "constraints": [FinStructure...]}
///                | {"name", "class": "forb", "forbidden": [FinStructure...]}
///   Prefix         {"spec", "structure", "log": [{"stage","scheduled","realized",
///                   "enqueued_at","queue_len_at_enqueue"}...]}
///
/// Readers reject unknown keys and re-validate every invariant on load.

Json to_json(const Signature& sig);
Json to_json(const FinStructure& s);
Json to_json(const ClassSpec& spec);
Json to_json(const EnumeratedPrefix& prefix);

Signature signature_from_json(const Json& j);
FinStructure structure_from_json(const Json& j);
ClassSpec class_spec_from_json(const Json& j);
EnumeratedPrefix prefix_from_json(const Json& j);

/// Loads and validates a ClassSpec document; throws std::runtime_error
/// with a "path: detail" message on parse or validation failure.
ClassSpec load_class_spec(const std::string& path);

std::string method_name(DegreeMethod m);

/// Stable target label: the canonical encoding words joined by ':'.
std::string target_label(const FinStructure& target);

/// Columns: spec,target,degree,methods,depth,flags. `methods` joins
/// member names with '+'; `flags` is "flagged" or empty.
std::string degree_table_csv(const DegreeTable& table);
Json degree_table_json(const DegreeTable& table);

/// Columns: trial,seed,colors_seen (colors joined with '|').
std::string persistence_csv(const PersistenceReport& report);

/// Catalog export: TypeCatalog::lines(), newline-joined.
std::string catalog_text(const TypeCatalog& catalog);

/// FNV-1a hash of a document's serialized bytes, for output headers.
std::uint64_t config_hash(const std::string& bytes);

}  // namespace bigdeg

#endif
