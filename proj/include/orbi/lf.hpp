#pragma once

// LF checking at levels 0 and 1: signature construction, bidirectional
// type checking, and reconstruction of implicitly quantified schematic
// variables in rules.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbi/ast.hpp"
#include "orbi/diagnostic.hpp"

namespace orbi {

enum class Level { Zero, One, Unknown };

struct SigEntry {
  Decl decl;  // rules carry their reconstructed, closed type
  Level level = Level::Unknown;
  Section section = Section::Syntax;
  SourceLoc loc;
  bool ok = true;  // false when the declaration itself failed to check
};

class Signature {
 public:
  const SigEntry* find(const std::string& name) const;
  const std::vector<SigEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Throws E-DUP on a name clash.
  void add(SigEntry entry);

  Level level_of(const std::string& family) const;
  std::vector<const SigEntry*> constructors_of(const std::string& family) const;
  std::vector<const SigEntry*> rules() const;

 private:
  std::vector<SigEntry> entries_;
  std::map<std::string, size_t> index_;
};

/// Dependency-ordered assumptions; later entries may mention earlier names.
using TypingCtx = std::vector<std::pair<std::string, TpRef>>;

/// Principal beta-normal type of a term. Throws E-TYPE or E-UNBOUND.
TpRef infer_type(const Signature& sig, const TypingCtx& ctx, const TermRef& t);
void check_term(const Signature& sig, const TypingCtx& ctx, const TermRef& t,
                const TpRef& expected);
/// Well-kindedness of a type. Throws E-KIND, E-TYPE, E-LEVEL or E-UNBOUND.
void check_tp(const Signature& sig, const TypingCtx& ctx, const TpRef& a);
void check_kind(const Signature& sig, const TypingCtx& ctx, const KindRef& k);

/// Definitional equality: beta, with vacuous Pi identified with arrow.
bool tp_equal(const TpRef& a, const TpRef& b);

bool is_level0_type(const Signature& sig, const TpRef& a);
/// Family at the end of the arrow/Pi spine.
std::string target_family(const TpRef& a);

/// Adds an outermost Pi for every free identifier of `rule` that the
/// signature does not declare, inferring its type from its occurrences.
/// Throws E-RECON.
Decl reconstruct_implicits(const Signature& sig, const Decl& rule);

/// Checks every declaration in source order. Syntax-section families are
/// level 0, Judgments-section families level 1, Rules-section constants must
/// conclude a level-1 family.
Signature check_signature(const OrbiSpec& spec, Diagnostics& diags);

}  // namespace orbi
