#pragma once

// Schemas, context patterns, inductive context relations and theorem scope
// checking, layered on top of the LF signature.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbi/ast.hpp"
#include "orbi/diagnostic.hpp"
#include "orbi/lf.hpp"

namespace orbi {

using SchemaTable = std::map<std::string, Schema>;
using RelationTable = std::map<std::string, InductiveDef>;

/// Block entries are checked left to right; each label is in scope for the
/// entries after it. Throws E-TYPE/E-KIND/E-UNBOUND/E-LEVEL or E-DUP.
void check_block(const Signature& sig, const Block& b);
void check_schema(const Signature& sig, const Schema& s);

/// Does `instance` match `alternative` after renaming its labels to the
/// alternative's, position by position?
bool block_matches(const Block& instance, const Block& alternative);

/// Context variables already known in the enclosing scope, with their schema.
using CtxVarScope = std::map<std::string, std::string>;

/// Checks a pattern expected to have schema `schema`. The head variable must
/// be in `scope` at that schema (E-CTXVAR / E-SCHEMA); each block must match
/// an alternative (E-SCHEMA).
void check_ctx_pattern(const Signature& sig, const SchemaTable& schemas,
                       const std::string& schema, const CtxPattern& c,
                       const CtxVarScope& scope);

/// `relations` holds the previously checked definitions.
void check_inductive_def(const Signature& sig, const SchemaTable& schemas,
                         const RelationTable& relations, const InductiveDef& d);

/// Scope and arity checks only; every problem found is reported.
void scope_check_theorem(const Signature& sig, const SchemaTable& schemas,
                         const RelationTable& relations, const Theorem& t,
                         Diagnostics& diags, const SourceLoc& loc = {});

/// The result of checking a whole file. Tables hold only the items that
/// checked; `spec` keeps everything that parsed.
struct CheckedSpec {
  OrbiSpec spec;
  Signature sig;
  SchemaTable schemas;
  RelationTable relations;
  std::vector<Theorem> theorems;

  /// Every user identifier in the file: declarations, schemas, relations,
  /// theorems, labels and bound-variable names. Used for name hygiene.
  std::set<std::string> identifiers;
};

CheckedSpec check_spec(OrbiSpec spec, Diagnostics& diags);

/// Parse then check; parse errors are reported into `diags` too.
CheckedSpec check_source(std::string_view source, Diagnostics& diags,
                         const std::string& file = "<input>");

}  // namespace orbi
