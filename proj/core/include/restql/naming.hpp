#pragma once

#include "restql/defmodel.hpp"

#include <string>
#include <vector>

namespace restql {

/// Which naming scheme canonical_name applies.
enum class NameScheme {
    Simple,         // unqualified source name, normalized
    FullyQualified, // full qualified name with separators mangled ("com_w_User")
    ListWrapper,    // "ListOf" + component name
};

/// True iff `name` matches the GraphQL name grammar [_A-Za-z][_0-9A-Za-z]*.
bool is_valid_graphql_name(const std::string& name);

/// Rewrites an arbitrary source name into the GraphQL name grammar: every
/// character outside [0-9A-Za-z_] becomes '_', and a leading digit gets an
/// underscore prefix. Throws Error if nothing survives normalization.
std::string normalize_identifier(const std::string& source_name);

/// Last segment of a dot-qualified name ("com.w.User" -> "User").
std::string simple_name(const std::string& qualified_name);

/// First character upper-cased ("integer" -> "Integer").
std::string capitalize(const std::string& name);

/// Deterministic GraphQL identifier for a type definition under the given
/// scheme. For named defs Simple normalizes the unqualified source name and
/// FullyQualified mangles the whole qualified name; generic instantiations
/// always name as "<Base>Of<Arg1><Arg2>..."; map entries name as
/// "<KeyName><ValueName>Entry"; ListWrapper yields "ListOf<Component>".
std::string canonical_name(const TypeDef& def, NameScheme scheme = NameScheme::Simple);

/// Name contribution of a type when it appears inside a composed name, e.g.
/// the "IntListOfString" parts of "PairOfIntListOfString".
std::string name_fragment(const TypeDef& def);

/// Map-entry identifier synthesized from already-mapped key/value types.
std::string map_entry_name(const TypeDef& key, const TypeDef& value);

/// Overload-mitigation identifier: <name>Using<ArgNames>Returns<ResultName>,
/// built from capitalized simple source-type names.
std::string overload_name(const std::string& operation_name,
                          const std::vector<std::string>& arg_type_names,
                          const std::string& result_type_name);

} // namespace restql
