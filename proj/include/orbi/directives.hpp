#pragma once

// Resolution of `%% wf|explicit|implicit [systems] in dest` directives into
// a per-target table of translation choices.

#include <map>
#include <set>
#include <string>

#include "orbi/ast.hpp"
#include "orbi/context.hpp"
#include "orbi/diagnostic.hpp"

namespace orbi {

/// Everything not listed is implicit.
struct AnnotationTable {
  System target = System::Ab;
  std::set<std::string> wf_families;
  std::set<std::string> explicit_rules;
  std::set<std::string> explicit_schemas;
  std::map<std::string, std::set<std::string>> explicit_relation_params;
  std::map<std::string, std::set<std::string>> explicit_theorem_vars;

  bool rule_explicit(const std::string& r) const {
    return explicit_rules.count(r) > 0;
  }
  bool schema_explicit(const std::string& s) const {
    return explicit_schemas.count(s) > 0;
  }
  bool param_explicit(const std::string& rel, const std::string& p) const;
  bool theorem_var_explicit(const std::string& thm, const std::string& v) const;

  bool operator==(const AnnotationTable&) const = default;
};

/// Reports E-DEST-UNKNOWN, E-DEST-AMBIG, E-DIR-CONFLICT, E-DIR and E-LEVEL
/// into `diags`; offending directives are left out of the table.
AnnotationTable resolve(const CheckedSpec& spec, System target,
                        Diagnostics& diags);

/// Throws the first diagnostic.
AnnotationTable resolve_or_throw(const CheckedSpec& spec, System target);

}  // namespace orbi
